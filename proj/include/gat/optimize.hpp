#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gat/decay_law.hpp"
#include "gat/dispersion.hpp"
#include "gat/legs.hpp"

namespace gat {

// Maximize P2 over the legs (x_i, g_i) of the sender, with the receiver
// mirrored at distance d. Strengths are real in the detuning frame
// (g~ = g exp(i k_q x)); pi sum g~^2 / v_g = 1/tau_constraint is kept exactly.
struct FidelityProblem {
  int n_legs = 1;
  double tau_constraint = 1.0;
  Dispersion disp = Dispersion(LinearChiral{});
  double omega_q = 50.0;
  double d = 30.0;
  int n_starts = 50;
  std::uint64_t rng_seed = 1;
  double window = 0.0;  // L_max; <= 0: 2 n_legs v_g tau, always capped at d/2 - lambda_q

  // Objective discretization. Linear chiral bands use the continuum delay
  // model with step dt; other bands use the gridded simulator.
  double dt = 5e-3;
  double grid_K = 150.0;
  Eigen::Index grid_n = 2048;

  int max_iters = 400;
  double fd_step = 1e-5;
  double rel_tol = 1e-8;

  // Extra initial points (detuning-frame legs, n_legs each), used before the
  // random starts and counted in n_starts.
  std::vector<std::vector<TildeLeg>> warm_starts;
};

struct StartRecord {
  int index = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  int n_iters = 0;
  bool line_search_failed = false;
};

struct OptimResult {
  LegSet best;
  std::vector<TildeLeg> best_tilde;
  double p2_max = 0.0;
  double t_star = 0.0;
  std::vector<StartRecord> history;
};

double position_window(const FidelityProblem& p);

// P2 and t_star of the mirrored pair built from detuning-frame legs.
std::pair<double, double> pair_fidelity(const FidelityProblem& p, const std::vector<TildeLeg>& legs);

OptimResult optimize_fidelity(const FidelityProblem& problem);

// Runs N = n_lo..n_hi, warm-starting each N from the previous optimum padded
// with one zero-strength leg, tried at every midpoint and just beyond each end.
std::vector<OptimResult> optimize_ladder(const FidelityProblem& base, int n_lo, int n_hi);

// Pads with zero-strength legs at the given positions.
std::vector<TildeLeg> pad_legs(const std::vector<TildeLeg>& legs, const std::vector<double>& new_x);

// x -> s x, g -> g / sqrt(s) exp(i k_q (x - s x)); populations map as t -> s t.
LegSet rescale(const LegSet& legs, double s, double k_q);

struct PulseTarget {
  Eigen::VectorXd dk;    // uniform detuning grid k - k_q
  Eigen::VectorXcd xi;   // target spectrum, int |xi|^2 dk = 1
};

struct PulseProblem {
  PulseTarget target;
  int n_legs = 3;
  int n_starts = 20;
  std::uint64_t rng_seed = 1;
  double window = 0.0;  // <= 0: 2 n_legs
  int max_iters = 400;
  double fd_step = 1e-5;
  double rel_tol = 1e-8;
  std::vector<std::vector<TildeLeg>> warm_starts;
};

struct PulseResult {
  std::vector<TildeLeg> best;
  double f_target = 0.0;
  std::vector<StartRecord> history;
};

// Time-symmetric pulse of the continuum design for a decay law, centred on
// x0 (xi -> xi exp(-i dk x0)) and normalized on dk in [-K, K].
PulseTarget design_pulse_target(const DecayLaw& decay, double K, Eigen::Index n, double x0);

// ||xi_legs - xi_target||_2 on the target grid.
double pulse_mismatch(const PulseTarget& target, const std::vector<TildeLeg>& legs);

PulseResult optimize_pulse_shape(const PulseProblem& problem);

// Transfer fidelity of the mirrored pair built from pulse-optimized legs.
double fidelity_of_target_pulses(const std::vector<TildeLeg>& legs, double d = 30.0, double dt = 5e-3);

}  // namespace gat
