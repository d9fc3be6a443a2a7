#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "gat/coupling.hpp"
#include "gat/dispersion.hpp"
#include "gat/legs.hpp"
#include "gat/mode_grid.hpp"

namespace gat {

enum class ChiralMode { AssumeChiral, Bidirectional };

struct SystemSpec {
  GiantAtomPair pair;
  Dispersion disp;
  double omega_q = 50.0;
  ModeGrid grid;
  ChiralMode chiral_mode = ChiralMode::AssumeChiral;
};

struct SimOptions {
  double t_max = 0.0;  // <= 0: d/v_g + 12 tau
  Eigen::Index n_times = 2000;
  double norm_tol = 1e-8;
};

// Amplitudes in the rotating frame: c_alpha multiplies exp(-i omega_q t) and
// c_k multiplies exp(-i omega(k) t).
struct TrajectoryResult {
  Eigen::VectorXd times;
  Eigen::VectorXcd c1;
  Eigen::VectorXcd c2;
  ModeGrid grid;
  Eigen::VectorXcd ck_final;
  double p2_max = 0.0;
  double t_star = 0.0;
  // Largest |norm - 1| over the checked snapshots.
  double norm_error = 0.0;
};

TrajectoryResult simulate(const SystemSpec& spec, const SimOptions& opts = {});
TrajectoryResult simulate_gk(const SampledCoupling& g1, const SampledCoupling& g2, const Dispersion& disp,
                             double omega_q, const SimOptions& opts = {});
// One emitter only; c2 is identically zero.
TrajectoryResult simulate_single(const SampledCoupling& g, const Dispersion& disp, double omega_q,
                                 const SimOptions& opts);

// Lab-frame emitter amplitudes c_alpha(t) exp(-i omega_q t).
std::pair<Eigen::VectorXcd, Eigen::VectorXcd> lab_frame(const TrajectoryResult& traj, double omega_q);

// c1(t) from the spectral density of the resolvent, with the self energy
// computed by principal-value quadrature over the grid of g.
Eigen::VectorXcd c1_resolvent(const SampledCoupling& g, const Dispersion& disp, double omega_q,
                              const Eigen::VectorXd& times);

// (p2_max, t_star). Throws WindowTooShort if the maximum sits at the last time.
std::pair<double, double> transfer_fidelity(const TrajectoryResult& traj);

// Long-time populations of the grid modes, |c_k|^2 dk summed over k < 0.
double left_moving_population(const TrajectoryResult& traj);

}  // namespace gat
