#pragma once

#include <map>
#include <string>
#include <vector>

#include "gat/coupling.hpp"
#include "gat/dynamics.hpp"
#include "gat/legs.hpp"
#include "gat/studies.hpp"

namespace gat {

// Flat "key = value" configuration. '#' starts a comment. Keys outside the
// known set are rejected with InvalidConfig.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  static const std::vector<std::string>& known_keys();

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  // Comma separated list of numbers.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
  void set(const std::string& key, const std::string& value);

  // Canonical "key=value\n" text in key order (used for hashing).
  std::string canonical() const;

 private:
  std::map<std::string, std::string> values_;
};

void write_design_csv(const std::string& path, const SampledCoupling& g);
void write_profile_csv(const std::string& path, const SpatialProfile& p);
void write_legs_csv(const std::string& path, const LegSet& legs);
LegSet read_legs_csv(const std::string& path, double lambda_q);
void write_trajectory_csv(const std::string& path, const TrajectoryResult& traj);
void write_field_csv(const std::string& path, const TrajectoryResult& traj);
void write_table_csv(const std::string& path, const StudyReport& rep);

std::string report_json(const StudyReport& rep);
void write_text(const std::string& path, const std::string& text);

}  // namespace gat
