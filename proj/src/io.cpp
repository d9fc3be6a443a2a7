#include "gat/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gat/errors.hpp"

namespace gat {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::InvalidConfig, "cannot open " + path + " for writing");
  f.precision(15);
  return f;
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return x;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::InvalidConfig, "value of " + key + " is not a number: '" + v + "'");
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      "units.omega_q_tau",
      "dispersion.variant",
      "dispersion.W_tau",
      "dispersion.J_tau",
      "dispersion.a_over_vgtau",
      "dispersion.omega_r_tau",
      "grid.K",
      "grid.n_modes",
      "pair.distance_over_vgtau",
      "decay.variant",
      "decay.gamma_tau",
      "decay.tau",
      "design.T_over_tau",
      "design.eps",
      "design.x_lo",
      "design.x_hi",
      "design.n_x",
      "sim.t_max_over_tau",
      "sim.n_times",
      "sim.chiral_mode",
      "legs.file",
      "opt.n_legs",
      "opt.n_starts",
      "opt.seed",
      "opt.window_over_vgtau",
      "opt.mode",
      "opt.dt",
      "opt.max_iters",
      "opt.n_min",
      "opt.n_max",
      "pulse.target",
      "pulse.K",
      "pulse.n_k",
      "disorder.sigma_over_lambda",
      "disorder.n_samples",
      "scan.W_tau_list",
      "scan.d_list",
      "scan.reoptimize",
      "appendix.n_legs",
      "appendix.extent_over_vgtau",
  };
  return keys;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::InvalidConfig, "cannot read config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(ErrorKind::InvalidConfig, "unknown key " + key);
  values_[key] = value;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_number(key, it->second);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const double x = parse_number(key, it->second);
  if (x != std::floor(x)) fail(ErrorKind::InvalidConfig, "value of " + key + " must be an integer");
  return static_cast<long long>(x);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  fail(ErrorKind::InvalidConfig, "value of " + key + " is not a boolean");
}

std::vector<double> Config::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::istringstream in(it->second);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(key, trim(item)));
  return out;
}

std::string Config::canonical() const {
  std::string s;
  for (const auto& [k, v] : values_) s += k + "=" + v + "\n";
  return s;
}

void write_design_csv(const std::string& path, const SampledCoupling& g) {
  auto f = open_out(path);
  f << "k,re_g,im_g\n";
  for (Eigen::Index i = 0; i < g.grid.size(); ++i) f << g.grid.k[i] << ',' << g.g[i].real() << ',' << g.g[i].imag() << '\n';
}

void write_profile_csv(const std::string& path, const SpatialProfile& p) {
  auto f = open_out(path);
  f << "x,re_g,im_g\n";
  for (Eigen::Index i = 0; i < p.x.size(); ++i) f << p.x[i] << ',' << p.g[i].real() << ',' << p.g[i].imag() << '\n';
}

void write_legs_csv(const std::string& path, const LegSet& legs) {
  auto f = open_out(path);
  f << "x_over_vgtau,re_g,im_g\n";
  for (const auto& l : legs.legs) f << l.x << ',' << l.g.real() << ',' << l.g.imag() << '\n';
}

LegSet read_legs_csv(const std::string& path, double lambda_q) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::InvalidConfig, "cannot read leg file " + path);
  std::string line;
  if (!std::getline(f, line) || trim(line) != "x_over_vgtau,re_g,im_g")
    fail(ErrorKind::InvalidConfig, path + ": missing header x_over_vgtau,re_g,im_g");
  std::vector<Leg> legs;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream in(line);
    std::string a, b, c;
    if (!std::getline(in, a, ',') || !std::getline(in, b, ',') || !std::getline(in, c))
      fail(ErrorKind::InvalidConfig, path + ":" + std::to_string(lineno) + ": expected three columns");
    legs.push_back({parse_number("x", trim(a)), {parse_number("re_g", trim(b)), parse_number("im_g", trim(c))}});
  }
  return canonicalize(std::move(legs), lambda_q);
}

void write_trajectory_csv(const std::string& path, const TrajectoryResult& traj) {
  auto f = open_out(path);
  f << "t_over_tau,p1,p2,re_c1,im_c1,re_c2,im_c2\n";
  for (Eigen::Index i = 0; i < traj.times.size(); ++i) {
    const auto c1 = traj.c1[i];
    const auto c2 = traj.c2[i];
    f << traj.times[i] << ',' << std::norm(c1) << ',' << std::norm(c2) << ',' << c1.real() << ',' << c1.imag() << ','
      << c2.real() << ',' << c2.imag() << '\n';
  }
}

void write_field_csv(const std::string& path, const TrajectoryResult& traj) {
  auto f = open_out(path);
  f << "k,re_ck,im_ck\n";
  for (Eigen::Index i = 0; i < traj.grid.size(); ++i)
    f << traj.grid.k[i] << ',' << traj.ck_final[i].real() << ',' << traj.ck_final[i].imag() << '\n';
}

void write_table_csv(const std::string& path, const StudyReport& rep) {
  auto f = open_out(path);
  for (std::size_t j = 0; j < rep.columns.size(); ++j) f << (j ? "," : "") << rep.columns[j];
  f << '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) f << (j ? "," : "") << row[j];
    f << '\n';
  }
}

std::string report_json(const StudyReport& rep) {
  nlohmann::ordered_json j;
  j["name"] = rep.name;
  j["seed"] = rep.seed;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(rep.config_hash));
  j["config_hash"] = hash;
  j["n_retained"] = rep.n_retained;
  j["n_discarded"] = rep.n_discarded;
  const Summary& s = rep.summary;
  j["summary"] = {{"mean", s.mean}, {"std", s.std}, {"min", s.min}, {"max", s.max}, {"q05", s.q05},
                  {"q25", s.q25},   {"q50", s.q50}, {"q75", s.q75}, {"q95", s.q95}};
  for (const auto& [k, v] : rep.scalars) j["scalars"][k] = v;
  j["samples"] = rep.samples;
  return j.dump(2);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::InvalidConfig, "cannot open " + path + " for writing");
  f << text;
}

}  // namespace gat
