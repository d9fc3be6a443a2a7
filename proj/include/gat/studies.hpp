#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gat/decay_law.hpp"
#include "gat/dispersion.hpp"
#include "gat/legs.hpp"
#include "gat/optimize.hpp"

namespace gat {

struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

Summary summarize(const std::vector<double>& v);

// FNV-1a over a canonical config string.
std::uint64_t config_hash(const std::string& text);

struct StudyReport {
  std::string name;
  std::vector<double> samples;
  Summary summary;
  int n_retained = 0;
  int n_discarded = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> scalars;
};

struct DisorderStudy {
  LegSet base;  // sender legs (physical strengths)
  double sigma = 0.0;
  int n_samples = 200;
  std::uint64_t seed = 1;
};

// Every leg of both atoms is shifted by independent N(0, sigma^2) noise; the
// receiver starts as the mirror of base at distance d. Samples that break the
// serial order are discarded and counted. Linear chiral band only.
StudyReport disorder_sweep(const DisorderStudy& study, const Dispersion& disp, double omega_q, double d,
                           double dt = 5e-3);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingResult {
  std::vector<OptimResult> optima;  // one per N
  LinearFit fit;                    // 1/(1 - p2) vs N over [fit_lo, n_hi]
  StudyReport report;
};

ScalingResult scaling_study(const FidelityProblem& base, int n_lo, int n_hi, int fit_lo = 2);

// Fidelity vs distance for Sinusoidal bands of width W, using the sender legs
// as given (columns W, d, p2_fixed) and, when reoptimize is set, after
// re-running the optimizer under the curved band warm-started from them
// (column p2_reopt).
StudyReport dispersion_scan(const std::vector<TildeLeg>& legs, const std::vector<double>& W_list,
                            const std::vector<double>& d_list, bool reoptimize, const FidelityProblem& base);

struct DispersionProfile {
  double W = 0.0;
  SpatialProfile profile;
  double second_moment = 0.0;  // int x^2 |g|^2 / int |g|^2 about the centroid
  double p2_max = 0.0;         // simulate_gk on the designed pair (if requested)
};

struct ProfileScanOptions {
  double omega_q = 50.0;
  double K = 25.0;
  Eigen::Index n_modes = 2048;
  double x_lo = 0.0, x_hi = 30.0;
  Eigen::Index n_x = 1500;
  bool simulate = false;
};

// Designs the Gaussian-decay coupling for each band (W <= 0 means linear) and
// returns its demodulated spatial profile.
std::vector<DispersionProfile> continuum_dispersion_profiles(const Gaussian& decay, const std::vector<double>& W_list,
                                                             double d, double T, const ProfileScanOptions& opts = {});

struct AppendixAOptions {
  double omega_q = 50.0;
  int n_legs = 10;
  double extent = 5.0;
  double d = 30.0;
  double K = 40.0;
  Eigen::Index n_modes = 4096;
};

// Exponential-design profile -> n legs over the extent -> real strengths ->
// chirality doubling -> bidirectional simulation. Scalars: p2_max, t_star,
// left_population, n_phases, g_minus (|g(-k_q)|), g_plus_error.
StudyReport appendix_a_pipeline(const AppendixAOptions& opts = {});

}  // namespace gat
