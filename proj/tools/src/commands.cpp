#include "collateral/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <collateral/errors.hpp>
#include <collateral/evolve.hpp>
#include <collateral/idling.hpp>
#include <collateral/noon.hpp>
#include <collateral/optical.hpp>

#include "collateral/cli/config.hpp"

namespace collateral::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string config_path;
  std::string out_path;
  bool as_json = false;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config_path, "configuration file")->required();
  cmd->add_option("--out", c.out_path, "write the main output here instead of stdout");
  cmd->add_flag("--json", c.as_json, "JSON output");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  f << text;
}

const char* sign_name(CollateralSign s) {
  return s == CollateralSign::opposing ? "opposing" : "circuit";
}

double ghz(double omega) { return angular_to_hz(omega) / 1e9; }
double mhz(double omega) { return angular_to_hz(omega) / 1e6; }

// --- derive ---------------------------------------------------------------

int cmd_derive(const Common& c, std::ostream& out) {
  const Config cfg = Config::load(c.config_path);
  const CircuitParams p = circuit_from_config(cfg);
  const CollateralSign sign = sign_from_config(cfg);
  const DerivedParams d = derive(p);
  const ValidityReport v = check_validity(p, d);
  const double h = kTwoPi * kSI.reduced_planck;

  if (c.as_json) {
    json doc;
    json conf(circuit_to_config(p));
    conf["collateral_sign"] = sign_name(sign);
    doc["config"] = conf;
    json dj{{"E_C_over_h_MHz", d.charging_energy / h / 1e6},
            {"E_J_over_h_GHz", d.josephson_energy / h / 1e9},
            {"omega_q_over_2pi_GHz", ghz(d.omega_q)},
            {"omega_R1_over_2pi_GHz", ghz(d.omega_r1)},
            {"omega_R2_over_2pi_GHz", ghz(d.omega_r2)},
            {"g1_over_2pi_MHz", mhz(d.g1)},
            {"g2_over_2pi_MHz", mhz(d.g2)},
            {"kappa_over_2pi_MHz", mhz(d.kappa)}};
    dj["detuning_over_2pi_GHz"] = d.detuning ? json(ghz(*d.detuning)) : json(nullptr);
    doc["derived"] = dj;
    doc["validity"] = {{"dispersive", v.dispersive},
                       {"rotating_wave", v.rotating_wave},
                       {"small_coupling", v.small_coupling},
                       {"warnings", v.warnings}};
    emit(doc.dump(2) + "\n", c.out_path, out);
    return kOk;
  }

  std::string s;
  auto row = [&s](std::string_view name, double value, std::string_view unit) {
    s += fmt::format("  {:<14}{:>12.4f} {}\n", name, value, unit);
  };
  s += "circuit\n";
  row("C_T", p.c_total / kFemto, "fF");
  row("C_q1", p.c_q1 / kFemto, "fF");
  row("C_q2", p.c_q2 / kFemto, "fF");
  row("C_R1", p.c_r1 / kFemto, "fF");
  row("C_R2", p.c_r2 / kFemto, "fF");
  row("C_R1R2", p.c_r1r2 / kFemto, "fF");
  row("L_R1", p.l_r1 / kNano, "nH");
  row("L_R2", p.l_r2 / kNano, "nH");
  row("phi_ext/phi0", p.phi_ext.in_phi0(), "");
  s += fmt::format("derived (collateral sign: {})\n", sign_name(sign));
  row("E_C/h", d.charging_energy / h / 1e6, "MHz");
  row("E_J~/h", d.josephson_energy / h / 1e9, "GHz");
  row("omega_q/2pi", ghz(d.omega_q), "GHz");
  row("omega_R1/2pi", ghz(d.omega_r1), "GHz");
  row("omega_R2/2pi", ghz(d.omega_r2), "GHz");
  if (d.detuning) row("Delta/2pi", ghz(*d.detuning), "GHz");
  row("g1/2pi", mhz(d.g1), "MHz");
  row("g2/2pi", mhz(d.g2), "MHz");
  row("kappa/2pi", mhz(d.kappa), "MHz");
  for (const auto& w : v.warnings) s += fmt::format("warning: {}\n", w);
  emit(s, c.out_path, out);
  return kOk;
}

// --- sweep-flux -----------------------------------------------------------

struct SweepArgs {
  double flux_min = 0.9;
  double flux_max = 1.1;
  std::size_t flux_points = 201;
  double t_max = 1.5e-6;
  std::size_t t_points = 301;
  int photons = 1;
  int n_max = -1;
  bool no_kappa = false;
  std::string variant = "rwa";
};

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = Config::load(c.config_path);
  const CircuitParams p = circuit_from_config(cfg);

  SweepOptions opt;
  opt.photons = a.photons;
  opt.n_max = a.n_max;
  opt.sign = sign_from_config(cfg);
  opt.threads = c.threads;
  opt.variant = a.variant == "transmon" ? HamiltonianVariant::transmon : HamiltonianVariant::rwa;
  if (a.no_kappa) opt.kappa_override = 0.0;

  const auto flux = linspace(a.flux_min, a.flux_max, a.flux_points);
  const auto times = linspace(0.0, a.t_max, a.t_points);
  const TraceGrid grid = sweep_flux(p, flux, times, opt);
  if (grid.valid_columns() == 0) {
    err << "error: qubit frequency undefined over the whole flux range\n";
    return kFluxDomain;
  }
  emit(c.as_json ? to_json(grid, 2) + "\n" : to_csv(grid), c.out_path, out);

  const auto j = grid.most_frozen_column();
  fmt::print(err, "most frozen column: phi_ext/phi0 = {:.4f}, min P = {:.4f} ({} of {} columns valid)\n",
             grid.flux_phi0[j], grid.column_min(j), grid.valid_columns(), grid.cols());
  return kOk;
}

// --- idling ---------------------------------------------------------------

struct IdlingArgs {
  bool no_kappa = false;
  std::string curve_path;
  double curve_min = 0.5;
  double curve_max = 1.5;
  std::size_t curve_points = 1001;
};

int cmd_idling(const Common& c, const IdlingArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = Config::load(c.config_path);
  const CircuitParams p = circuit_from_config(cfg);
  IdlingSearch search;
  search.sign = sign_from_config(cfg);
  if (a.no_kappa) search.kappa_scale = 0.0;

  if (!a.curve_path.empty()) {
    const auto flux = linspace(a.curve_min, a.curve_max, a.curve_points);
    emit(curve_to_csv(effective_coupling_curve(p, flux, search.sign)), a.curve_path, out);
  }

  double numeric = 0.0;
  try {
    numeric = idling_flux_numeric(p, search);
  } catch (const NoIdlingPoint& e) {
    fmt::print(err, "no idling point in [{}, {}] phi0: {}\n", search.lo_phi0, search.hi_phi0,
               a.no_kappa ? "the collateral coupling is switched off" : e.what());
    return kNoIdling;
  }

  std::optional<double> closed;
  std::string closed_note;
  try {
    closed = idling_flux_closed_form(p);
  } catch (const std::exception& e) {
    closed_note = e.what();
  }

  if (c.as_json) {
    json doc{{"numeric_phi0", numeric}, {"collateral_sign", sign_name(search.sign)}};
    doc["closed_form_phi0"] = closed ? json(*closed) : json(nullptr);
    doc["difference"] = closed ? json(std::abs(*closed - numeric)) : json(nullptr);
    if (!closed) doc["closed_form_note"] = closed_note;
    emit(doc.dump(2) + "\n", c.out_path, out);
    return kOk;
  }
  std::string s = fmt::format("idling flux (phi_ext/phi0)\n  numeric      {:.6f}\n", numeric);
  if (closed)
    s += fmt::format("  closed form  {:.6f}\n  difference   {:.3e}\n", *closed,
                     std::abs(*closed - numeric));
  else
    s += fmt::format("  closed form  n/a ({})\n", closed_note);
  emit(s, c.out_path, out);
  return kOk;
}

// --- noon -----------------------------------------------------------------

struct NoonArgs {
  int photons = 3;
  int n_max = -1;
  std::string prep = "ideal";
  std::vector<double> ratios{1.0 / 50.0, 1.0 / 75.0, 1.0 / 100.0};
  std::string step_log_path;
};

int cmd_noon(const Common& c, const NoonArgs& a, std::ostream& out) {
  const Config cfg = Config::load(c.config_path);
  const CircuitParams p = circuit_from_config(cfg);
  NoonOptions opt;
  opt.sign = sign_from_config(cfg);
  opt.prep = a.prep == "simulated" ? PrepMode::simulated : PrepMode::ideal;
  opt.n_max = a.n_max;

  const auto rows = fidelity_scan(p, a.ratios, a.photons, opt, c.threads);
  if (c.as_json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"N", r.photons},
                     {"cq_over_cr", r.cq_over_cr},
                     {"fidelity_g_branch", r.fidelity_g},
                     {"fidelity_e_branch", r.fidelity_e},
                     {"prob_g", r.prob_g},
                     {"tau1_s", r.tau1_s},
                     {"tau2_s", r.tau2_s},
                     {"steps", r.steps}});
    emit(arr.dump(2) + "\n", c.out_path, out);
  } else {
    emit(scan_to_csv(rows), c.out_path, out);
  }

  if (!a.step_log_path.empty()) {
    // Step logs for every N at the first ratio.
    CircuitParams q = p;
    q.c_q1 = a.ratios.front() * q.c_r1;
    q.c_q2 = a.ratios.front() * q.c_r2;
    json logs = json::array();
    for (int n = 1; n <= a.photons; ++n) {
      const HilbertSpace space(a.n_max < 0 ? n + 2 : a.n_max, 2);
      logs.push_back(json::parse(step_log_json(run_protocol(space, q, n, opt))));
    }
    emit(logs.dump(2) + "\n", a.step_log_path, out);
  }
  return kOk;
}

// --- optical --------------------------------------------------------------

int cmd_optical(const Common& c, std::ostream& out) {
  const Config cfg = Config::load(c.config_path);
  const CavityParams cp = cavity_from_config(cfg);
  const OpticalReport r = optical_report(cp);
  json doc{{"mode_volume_m3", cp.mode_volume},
           {"linewidth_rad_s", cp.linewidth},
           {"kappa_c_rad_s", r.kappa_c},
           {"kappa_c_over_2pi_Hz", angular_to_hz(r.kappa_c)},
           {"g_rad_s", r.g},
           {"g_over_2pi_Hz", angular_to_hz(r.g)},
           {"dipole_Cm", r.dipole},
           {"dipole_derived", !cp.dipole.has_value()},
           {"g_over_kappa_c", r.ratio},
           {"g_over_kappa_c_from_dipole", r.ratio_from_g},
           {"consistent", r.consistent}};
  emit(doc.dump(2) + "\n", c.out_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resonator-transmon-resonator collateral coupling toolkit", "collateral"};
  app.require_subcommand(1);

  Common common;
  SweepArgs sweep;
  IdlingArgs idling;
  NoonArgs noon;

  auto* derive_cmd = app.add_subcommand("derive", "derived frequencies and couplings");
  add_common(derive_cmd, common);

  auto* sweep_cmd = app.add_subcommand("sweep-flux", "population traces over a flux range (CSV)");
  add_common(sweep_cmd, common);
  sweep_cmd->add_option("--flux-min", sweep.flux_min, "phi_ext/phi0");
  sweep_cmd->add_option("--flux-max", sweep.flux_max, "phi_ext/phi0");
  sweep_cmd->add_option("--flux-points", sweep.flux_points)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--t-max", sweep.t_max, "seconds")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--t-points", sweep.t_points)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("-N,--photons", sweep.photons)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--n-max", sweep.n_max, "Fock cutoff (default N + 2)");
  sweep_cmd->add_flag("--no-kappa", sweep.no_kappa, "drop the collateral term");
  sweep_cmd->add_option("--variant", sweep.variant)->check(CLI::IsMember({"rwa", "transmon"}));

  auto* idling_cmd = app.add_subcommand("idling", "locate the idling flux");
  add_common(idling_cmd, common);
  idling_cmd->add_flag("--no-kappa", idling.no_kappa, "drop the collateral term");
  idling_cmd->add_option("--curve", idling.curve_path, "write |g_eff| vs flux CSV here");
  idling_cmd->add_option("--curve-min", idling.curve_min);
  idling_cmd->add_option("--curve-max", idling.curve_max);
  idling_cmd->add_option("--curve-points", idling.curve_points)->check(CLI::PositiveNumber);

  auto* noon_cmd = app.add_subcommand("noon", "NOON protocol fidelity table (CSV)");
  add_common(noon_cmd, common);
  noon_cmd->add_option("-N,--photons", noon.photons, "largest N")->check(CLI::PositiveNumber);
  noon_cmd->add_option("--n-max", noon.n_max, "Fock cutoff (default N + 2)");
  noon_cmd->add_option("--prep", noon.prep)->check(CLI::IsMember({"ideal", "simulated"}));
  noon_cmd->add_option("--ratios", noon.ratios, "C_q/C_R values")->delimiter(',');
  noon_cmd->add_option("--step-log", noon.step_log_path, "write per-N step logs (JSON) here");

  auto* optical_cmd = app.add_subcommand("optical", "collateral coupling in crossed optical cavities");
  add_common(optical_cmd, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*derive_cmd) return cmd_derive(common, out);
    if (*sweep_cmd) return cmd_sweep(common, sweep, out, err);
    if (*idling_cmd) return cmd_idling(common, idling, out, err);
    if (*noon_cmd) return cmd_noon(common, noon, out);
    if (*optical_cmd) return cmd_optical(common, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    err << "flux domain error: " << e.what() << '\n';
    return kFluxDomain;
  } catch (const NoIdlingPoint& e) {
    err << "error: " << e.what() << '\n';
    return kNoIdling;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return kTruncation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace collateral::cli
