// config.hpp — strict [group] key=value configuration: unknown keys are
// rejected after the builders have consumed what they understand.
#pragma once

#include <map>
#include <set>
#include <string>

#include "liouv/thermo.hpp"

namespace liouv {

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& group, const std::string& key) const;
  std::string get_string(const std::string& group, const std::string& key) const;
  std::string get_string(const std::string& group, const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& group, const std::string& key) const;
  double get_double(const std::string& group, const std::string& key, double fallback) const;
  long get_int(const std::string& group, const std::string& key) const;
  long get_int(const std::string& group, const std::string& key, long fallback) const;
  bool get_bool(const std::string& group, const std::string& key, bool fallback) const;
  RVec get_list(const std::string& group, const std::string& key) const;
  RVec get_list(const std::string& group, const std::string& key, const RVec& fallback) const;

  // throws on any key never consumed by a getter
  void check_consumed() const;
  bool has_group(const std::string& group) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> groups_;
  mutable std::set<std::string> consumed_;
};

PhaseSpaceSpec phase_space_from_config(const Config& cfg, const std::string& group = "phase_space");
ElectronicSpec electronic_from_config(const Config& cfg, const std::string& group = "electronic");
SystemSpec system_from_config(const Config& cfg, const std::string& prefix);
AlchemicalPair alchemical_pair_from_config(const Config& cfg);
ThermoConfig thermo_from_config(const Config& cfg, const std::string& group = "alchemy");

// initial density: [initial_state] centers = ..., widths = ... (per axis)
KvNState initial_state_from_config(const Config& cfg, const Layout& layout, const std::string& group = "initial_state");

}  // namespace liouv
