#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "gat/coupling.hpp"
#include "gat/dispersion.hpp"

namespace gat {

struct Leg {
  double x = 0.0;
  std::complex<double> g;
};

struct LegSet {
  std::vector<Leg> legs;

  std::size_t size() const { return legs.size(); }
  const Leg& operator[](std::size_t i) const { return legs[i]; }
  Eigen::VectorXd positions() const;
  Eigen::VectorXcd strengths() const;
  // pi sum |g_j|^2 / v_g
  double total_rate(double v_g = 1.0) const;
  double extent() const { return legs.back().x - legs.front().x; }
};

// Sorts by position and merges legs closer than 1e-12*lambda_q. Legs whose
// merged strength cancels exactly are dropped.
LegSet canonicalize(std::vector<Leg> legs, double lambda_q);

struct GiantAtomPair {
  LegSet atom1;
  double d = 0.0;

  // x -> d - x, g -> conj(g)
  LegSet atom2() const;
  bool serial() const;
};

std::complex<double> g_of_k(const LegSet& legs, double k);
Eigen::VectorXcd g_of_k(const LegSet& legs, const Eigen::VectorXd& k);

LegSet sample_legs(const SpatialProfile& profile, int n, double x_lo, double x_hi, double lambda_q);
LegSet realify_legs(const LegSet& legs, double k_q);
LegSet double_legs_chiral(const LegSet& legs, double lambda_q);

// Detuning-frame parameters g~_n = g_n exp(i k_q x_n).
struct TildeLeg {
  double x = 0.0;
  std::complex<double> gt;
};
std::vector<TildeLeg> reparametrize_tilde(const LegSet& legs, double k_q);
LegSet from_tilde(const std::vector<TildeLeg>& legs, double k_q);

// Self energy and emitted pulse of a chiral linear waveguide, as functions of
// dk = k - k_q in the detuning frame.
std::complex<double> self_energy_tilde(const std::vector<TildeLeg>& legs, double dk, double v_g = 1.0);
std::complex<double> pulse_tilde(const std::vector<TildeLeg>& legs, double dk, double v_g = 1.0);

std::complex<double> self_energy_discrete(const LegSet& legs, double omega, const Dispersion& disp);
std::complex<double> pulse_from_legs(const LegSet& legs, double k, const Dispersion& disp, double omega_q);

// int |xi(k)|^2 dk over the whole line. Throws IncompleteEmission below 1 - 1e-4.
double pulse_norm(const std::vector<TildeLeg>& legs, double v_g = 1.0, bool check = true);

}  // namespace gat
