#include "liouv/config.hpp"

#include <fstream>
#include <sstream>

namespace liouv {

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, group;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::runtime_error("config: malformed group header at line " + std::to_string(lineno));
      group = trim(line.substr(1, line.size() - 2));
      cfg.groups_[group];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config: expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("config: empty key at line " + std::to_string(lineno));
    if (cfg.groups_[group].count(key))
      throw std::runtime_error("config: duplicate key '" + key + "' in [" + group + "]");
    cfg.groups_[group][key] = val;
  }
  return cfg;
}

bool Config::has(const std::string& group, const std::string& key) const {
  auto g = groups_.find(group);
  return g != groups_.end() && g->second.count(key) > 0;
}

bool Config::has_group(const std::string& group) const { return groups_.count(group) > 0; }

std::string Config::get_string(const std::string& group, const std::string& key) const {
  auto g = groups_.find(group);
  if (g == groups_.end() || !g->second.count(key))
    throw std::runtime_error("config: missing key '" + key + "' in [" + group + "]");
  consumed_.insert(group + "\n" + key);
  return g->second.at(key);
}

std::string Config::get_string(const std::string& group, const std::string& key, const std::string& fallback) const {
  return has(group, key) ? get_string(group, key) : fallback;
}

double Config::get_double(const std::string& group, const std::string& key) const {
  const std::string v = get_string(group, key);
  size_t pos = 0;
  const double d = std::stod(v, &pos);
  if (pos != v.size()) throw std::runtime_error("config: '" + key + "' is not a number: " + v);
  return d;
}

double Config::get_double(const std::string& group, const std::string& key, double fallback) const {
  return has(group, key) ? get_double(group, key) : fallback;
}

long Config::get_int(const std::string& group, const std::string& key) const {
  const std::string v = get_string(group, key);
  size_t pos = 0;
  const long d = std::stol(v, &pos);
  if (pos != v.size()) throw std::runtime_error("config: '" + key + "' is not an integer: " + v);
  return d;
}

long Config::get_int(const std::string& group, const std::string& key, long fallback) const {
  return has(group, key) ? get_int(group, key) : fallback;
}

bool Config::get_bool(const std::string& group, const std::string& key, bool fallback) const {
  if (!has(group, key)) return fallback;
  const std::string v = get_string(group, key);
  if (v == "true") return true;
  if (v == "false") return false;
  throw std::runtime_error("config: '" + key + "' must be true or false");
}

RVec Config::get_list(const std::string& group, const std::string& key) const {
  const std::string v = get_string(group, key);
  std::vector<double> vals;
  std::istringstream in(v);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    vals.push_back(std::stod(tok));
  }
  RVec out(static_cast<Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out(static_cast<Index>(i)) = vals[i];
  return out;
}

RVec Config::get_list(const std::string& group, const std::string& key, const RVec& fallback) const {
  return has(group, key) ? get_list(group, key) : fallback;
}

void Config::check_consumed() const {
  for (const auto& [group, kv] : groups_) {
    for (const auto& [key, val] : kv) {
      if (!consumed_.count(group + "\n" + key)) {
        throw std::runtime_error("config: unknown key '" + key + "' in [" + group + "]");
      }
    }
  }
}

PhaseSpaceSpec phase_space_from_config(const Config& cfg, const std::string& group) {
  PhaseSpaceSpec s;
  s.N = static_cast<int>(cfg.get_int(group, "N", 1));
  s.spatial_dim = static_cast<int>(cfg.get_int(group, "spatial_dim", 1));
  s.x = {cfg.get_int(group, "g_x"), cfg.get_double(group, "h_x"), static_cast<int>(cfg.get_int(group, "d_x", 1))};
  s.p = {cfg.get_int(group, "g_p"), cfg.get_double(group, "h_p"), static_cast<int>(cfg.get_int(group, "d_p", 1))};
  const std::string ens = cfg.get_string(group, "ensemble", "NVT");
  if (ens == "NVT")
    s.ensemble = Ensemble::NVT;
  else if (ens == "NVE")
    s.ensemble = Ensemble::NVE;
  else
    throw std::runtime_error("config: ensemble must be NVT or NVE");
  if (s.ensemble == Ensemble::NVT) {
    s.s = {cfg.get_int(group, "g_s"), cfg.get_double(group, "h_s"), static_cast<int>(cfg.get_int(group, "d_s", 1))};
    s.ps = {cfg.get_int(group, "g_ps"), cfg.get_double(group, "h_ps"),
            static_cast<int>(cfg.get_int(group, "d_ps", 1))};
    s.Q = cfg.get_double(group, "Q", 1.0);
    s.T = cfg.get_double(group, "T", 1.0);
    s.N_f = static_cast<int>(cfg.get_int(group, "N_f", s.N * s.spatial_dim));
    s.s_min = cfg.get_double(group, "s_min", 1.0);
  }
  s.masses = cfg.get_list(group, "masses", RVec::Ones(s.N));
  s.charges = cfg.get_list(group, "charges", RVec::Ones(s.N));
  s.softening = cfg.get_double(group, "delta", 1.0);
  s.validate();
  return s;
}

ElectronicSpec electronic_from_config(const Config& cfg, const std::string& group) {
  ElectronicSpec e;
  e.n_electrons = static_cast<int>(cfg.get_int(group, "n_electrons", 1));
  e.n_planewaves = static_cast<int>(cfg.get_int(group, "n_planewaves", 3));
  e.h_el = cfg.get_double(group, "h_el", 1.0);
  const std::string mode = cfg.get_string(group, "mode", "faithful");
  if (mode == "faithful")
    e.mode = GsSource::faithful;
  else if (mode == "exact")
    e.mode = GsSource::exact;
  else
    throw std::runtime_error("config: electronic mode must be faithful or exact");
  e.delta_overlap = cfg.get_double(group, "delta_overlap", 0.6);
  e.eps_prep = cfg.get_double(group, "eps_prep", 1e-4);
  e.ext_positions = cfg.get_list(group, "ext_positions", RVec(0));
  e.ext_charges = cfg.get_list(group, "ext_charges", RVec(0));
  e.validate();
  return e;
}

SystemSpec system_from_config(const Config& cfg, const std::string& prefix) {
  SystemSpec sys;
  sys.phase_space = phase_space_from_config(cfg, prefix + ".phase_space");
  sys.electronic = electronic_from_config(cfg, prefix + ".electronic");
  return sys;
}

AlchemicalPair alchemical_pair_from_config(const Config& cfg) {
  AlchemicalPair pair;
  pair.a = system_from_config(cfg, "alchemy.system_a");
  pair.b = system_from_config(cfg, "alchemy.system_b");
  pair.validate();
  return pair;
}

ThermoConfig thermo_from_config(const Config& cfg, const std::string& group) {
  ThermoConfig t;
  t.n_lambda = static_cast<int>(cfg.get_int(group, "n_lambda", 0));
  t.t_eq = cfg.get_double(group, "t_eq", 1.0);
  t.eps = cfg.get_double(group, "eps", 0.05);
  t.xi = cfg.get_double(group, "xi", 0.05);
  t.qae_ancillas = static_cast<int>(cfg.get_int(group, "qae_ancillas", 0));
  t.shots = cfg.get_int(group, "shots", 0);
  const std::string mode = cfg.get_string(group, "mode", "ideal");
  if (mode == "ideal")
    t.mode = EstimationMode::ideal;
  else if (mode == "sampled")
    t.mode = EstimationMode::sampled;
  else if (mode == "qae")
    t.mode = EstimationMode::qae;
  else
    throw std::runtime_error("config: estimation mode must be ideal, sampled, or qae");
  t.validate();
  return t;
}

KvNState initial_state_from_config(const Config& cfg, const Layout& layout, const std::string& group) {
  const int na = static_cast<int>(layout.axes.size());
  RVec centers = cfg.get_list(group, "centers", RVec::Zero(na));
  RVec widths = cfg.get_list(group, "widths", RVec::Ones(na));
  if (centers.size() != na || widths.size() != na)
    throw std::runtime_error("config: initial_state centers/widths need one entry per axis");
  return gaussian_state(layout, centers, widths);
}

}  // namespace liouv
