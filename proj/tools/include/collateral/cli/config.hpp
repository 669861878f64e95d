#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <collateral/hamiltonians.hpp>
#include <collateral/optical.hpp>
#include <collateral/params.hpp>

namespace collateral::cli {

/// Malformed or incomplete configuration. `line` is 0 when the problem is not
/// tied to a particular line (e.g. a missing key).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0, std::string key = {});

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Flat key/value configuration.
///
/// Two syntaxes are accepted. Plain text:
///
///     # reference circuit
///     C_T_fF = 100
///     C_R1_fF = 400
///
/// or a flat JSON object. A JSON object whose "config" member is itself an
/// object is read from that member, so `derive --json` output can be fed back.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.contains(key); }
  /// Throws ConfigError naming the key when it is absent or not a number.
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::optional<std::string> text(const std::string& key) const;
  int line_of(const std::string& key) const;

  void set(const std::string& key, std::string value, int line = 0);
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
};

CircuitParams circuit_from_config(const Config& cfg);
CollateralSign sign_from_config(const Config& cfg);
CavityParams cavity_from_config(const Config& cfg);

/// Circuit keys in display units, the inverse of circuit_from_config.
std::map<std::string, double> circuit_to_config(const CircuitParams& params);

}  // namespace collateral::cli
