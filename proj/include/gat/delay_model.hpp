#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gat/legs.hpp"

namespace gat {

// Infinite-band chiral linear waveguide (v_g = 1). Each leg carries its
// detuning-frame strength g~ = g exp(i k_q x) and the emitter it belongs to.
// The emitter amplitudes obey
//   dc_a/dt = -2 pi sum_{n in a} g~_n sum_m conj(g~_m) Theta_{1/2}(x_n - x_m) c_{b(m)}(t - (x_n - x_m)),
// integrated on a uniform time grid with exact exponential weights. The field
// entering leg n is carried leg to leg as a delayed cascade, so a step costs
// O(number of legs).
template <class Scalar>
struct DelayLeg {
  double x = 0.0;
  Scalar gt{};
  int emitter = 0;
};

struct DelayOptions {
  double dt = 5e-3;
  double t_max = 0.0;  // <= 0: leg extent + 12; rounded up to whole steps
  bool keep_trajectory = true;
  // Stop once the lost flux proves the receiver maximum has passed (p2_max and
  // t_star unchanged, trajectory truncated).
  bool early_stop = false;
};

struct DelayResult {
  Eigen::VectorXd times;
  Eigen::VectorXcd c1;
  Eigen::VectorXcd c2;
  double p2_max = 0.0;
  double t_star = 0.0;
};

template <class Scalar>
DelayResult simulate_delay(std::vector<DelayLeg<Scalar>> legs, const DelayOptions& opts);

// Mirrored pair built from atom-1 parameters (x_n, g~_n): atom 2 sits at
// d - x_n with g~ = conj(g~_n) (the common phase exp(i k_q d) is dropped).
template <class Scalar>
DelayResult simulate_delay_pair(const std::vector<double>& x, const std::vector<Scalar>& gt, double d,
                                const DelayOptions& opts);

// Physical leg sets of both emitters (positions in v_g tau, k_q sets g~).
DelayResult simulate_delay(const LegSet& atom1, const LegSet& atom2, double k_q, const DelayOptions& opts);

// Emitted spectrum of a single emitter, xi(dk) = -i conj(g(k)) int c1(s) exp(i dk s) ds,
// from the delay-model c1 (used as a pulse cross-check).
Eigen::VectorXcd delay_pulse(const std::vector<TildeLeg>& legs, const Eigen::VectorXd& dk, const DelayOptions& opts);

}  // namespace gat
