#include "collateral/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <collateral/constants.hpp>

namespace collateral::cli {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "C_T_fF",       "C_q1_fF",       "C_q2_fF",          "C_R1_fF",
      "C_R2_fF",      "L_R1_nH",       "L_R2_nH",          "E_J_over_EC",
      "E_J1_over_EC", "E_J2_over_EC",  "C_R1R2_fF",        "phi_ext_over_phi0",
      "collateral_sign",
      // optical
      "mode_volume_um3", "mode1_freq_Hz", "mode2_freq_Hz", "atom_freq_Hz",
      "linewidth",       "linewidth_unit", "dipole_Cm",
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void check_key(const std::string& key, int line) {
  if (!known_keys().contains(key))
    throw ConfigError(line > 0 ? fmt::format("line {}: unknown key '{}'", line, key)
                               : fmt::format("unknown key '{}'", key),
                      line, key);
}

Config parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports a byte offset; convert it to a line number.
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const int line = 1 + static_cast<int>(std::count(upto.begin(), upto.end(), '\n'));
    throw ConfigError(fmt::format("line {}: invalid JSON", line), line);
  }
  if (!doc.is_object()) throw ConfigError("JSON config must be an object");
  if (doc.contains("config") && doc["config"].is_object()) doc = doc["config"];

  Config cfg;
  for (const auto& [key, value] : doc.items()) {
    check_key(key, 0);
    if (value.is_number())
      cfg.set(key, fmt::format("{:.17g}", value.get<double>()));
    else if (value.is_string())
      cfg.set(key, value.get<std::string>());
    else
      throw ConfigError(fmt::format("key '{}' must be a number or string", key), 0, key);
  }
  return cfg;
}

}  // namespace

ConfigError::ConfigError(const std::string& what, int line, std::string key)
    : std::runtime_error(what), line_(line), key_(std::move(key)) {}

Config Config::parse(std::string_view text) {
  const auto first = trim(text);
  if (!first.empty() && first.front() == '{') return parse_json(text);

  Config cfg;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("line {}: expected key = value", line_no), line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no), line_no);
    if (value.empty())
      throw ConfigError(fmt::format("line {}: no value for '{}'", line_no, key), line_no, key);
    check_key(key, line_no);
    if (cfg.has(key))
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key), line_no, key);
    cfg.set(key, value, line_no);
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

double Config::number(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw ConfigError(fmt::format("missing required key '{}'", key), 0, key);
  const std::string& v = it->second.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    const int line = it->second.line;
    throw ConfigError(line > 0 ? fmt::format("line {}: '{}' is not a number: {}", line, key, v)
                               : fmt::format("'{}' is not a number: {}", key, v),
                      line, key);
  }
  return out;
}

double Config::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::optional<std::string> Config::text(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

int Config::line_of(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.line;
}

void Config::set(const std::string& key, std::string value, int line) {
  entries_[key] = Entry{std::move(value), line};
}

CircuitParams circuit_from_config(const Config& cfg) {
  CircuitParams p;
  p.c_total = cfg.number("C_T_fF") * kFemto;
  p.c_q1 = cfg.number("C_q1_fF") * kFemto;
  p.c_q2 = cfg.number("C_q2_fF") * kFemto;
  p.c_r1 = cfg.number("C_R1_fF") * kFemto;
  p.c_r2 = cfg.number("C_R2_fF") * kFemto;
  p.l_r1 = cfg.number("L_R1_nH") * kNano;
  p.l_r2 = cfg.number("L_R2_nH") * kNano;
  p.c_r1r2 = cfg.number_or("C_R1R2_fF", 0.0) * kFemto;
  p.phi_ext = Flux::from_phi0(cfg.number_or("phi_ext_over_phi0", 0.0));

  const bool split = cfg.has("E_J1_over_EC") || cfg.has("E_J2_over_EC");
  if (split && cfg.has("E_J_over_EC"))
    throw ConfigError("give either E_J_over_EC or E_J1_over_EC/E_J2_over_EC, not both", 0,
                      "E_J_over_EC");
  double ej1 = 0.0;
  double ej2 = 0.0;
  if (split) {
    ej1 = cfg.number("E_J1_over_EC");
    ej2 = cfg.number("E_J2_over_EC");
  } else {
    ej1 = ej2 = cfg.number("E_J_over_EC");
  }
  if (!(p.c_total > 0.0)) throw ConfigError("C_T_fF must be positive", cfg.line_of("C_T_fF"), "C_T_fF");
  const double ec = p.charging_energy();
  p.e_j1 = ej1 * ec;
  p.e_j2 = ej2 * ec;

  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

CollateralSign sign_from_config(const Config& cfg) {
  const auto v = cfg.text("collateral_sign");
  if (!v || *v == "opposing") return CollateralSign::opposing;
  if (*v == "circuit") return CollateralSign::circuit;
  const int line = cfg.line_of("collateral_sign");
  throw ConfigError(
      fmt::format("{}collateral_sign must be 'opposing' or 'circuit', got '{}'",
                  line > 0 ? fmt::format("line {}: ", line) : "", *v),
      line, "collateral_sign");
}

CavityParams cavity_from_config(const Config& cfg) {
  const double f1 = cfg.number("mode1_freq_Hz");
  const auto unit_text = cfg.text("linewidth_unit").value_or("angular");
  RateUnit unit = RateUnit::angular;
  if (unit_text == "hertz")
    unit = RateUnit::hertz;
  else if (unit_text != "angular")
    throw ConfigError(fmt::format("linewidth_unit must be 'angular' or 'hertz', got '{}'", unit_text),
                      cfg.line_of("linewidth_unit"), "linewidth_unit");

  CavityParams cp = CavityParams::resonant(cfg.number("mode_volume_um3") * 1e-18,
                                           hz_to_angular(f1), cfg.number("linewidth"), unit);
  cp.omega2 = hz_to_angular(cfg.number_or("mode2_freq_Hz", f1));
  cp.omega_atom = hz_to_angular(cfg.number_or("atom_freq_Hz", f1));
  if (cfg.has("dipole_Cm")) cp.dipole = cfg.number("dipole_Cm");
  try {
    cp.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cp;
}

std::map<std::string, double> circuit_to_config(const CircuitParams& p) {
  const double ec = p.charging_energy();
  return {
      {"C_T_fF", p.c_total / kFemto},
      {"C_q1_fF", p.c_q1 / kFemto},
      {"C_q2_fF", p.c_q2 / kFemto},
      {"C_R1_fF", p.c_r1 / kFemto},
      {"C_R2_fF", p.c_r2 / kFemto},
      {"L_R1_nH", p.l_r1 / kNano},
      {"L_R2_nH", p.l_r2 / kNano},
      {"E_J1_over_EC", p.e_j1 / ec},
      {"E_J2_over_EC", p.e_j2 / ec},
      {"C_R1R2_fF", p.c_r1r2 / kFemto},
      {"phi_ext_over_phi0", p.phi_ext.in_phi0()},
  };
}

}  // namespace collateral::cli
