#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gat {

// Single-excitation Hamiltonian of q emitters (energy 0) coupled to n modes:
//   (H psi)_alpha = sum_k V(k, alpha) psi_k
//   (H psi)_k     = w_k psi_k + sum_alpha conj(V(k, alpha)) psi_alpha
// State layout: [emitters..., modes...].
struct BorderedDiagonal {
  Eigen::VectorXd mode_energy;
  Eigen::MatrixXcd coupling;  // n x q

  Eigen::Index n_emitters() const { return coupling.cols(); }
  Eigen::Index dim() const { return coupling.cols() + mode_energy.size(); }
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::MatrixXcd dense() const;
};

// exp(-iHt) psi0 by a Chebyshev expansion. One recurrence to the largest time
// stores the emitter components of every T_n(X) psi0, so emitter amplitudes
// are available at any t <= t_max in O(M); full states are accumulated for
// the requested snapshot times.
class ChebyshevPropagator {
 public:
  ChebyshevPropagator(const BorderedDiagonal& h, const Eigen::VectorXcd& psi0, double t_max,
                      const std::vector<double>& snapshot_times);

  Eigen::VectorXcd emitters(double t) const;
  const std::vector<Eigen::VectorXcd>& snapshots() const { return snapshots_; }
  int order() const { return order_; }

 private:
  void coefficients(double t, std::vector<std::complex<double>>& a) const;

  double center_ = 0.0, radius_ = 1.0, t_max_ = 0.0;
  int order_ = 0;
  Eigen::MatrixXcd emitter_moments_;  // (order+1) x q
  std::vector<Eigen::VectorXcd> snapshots_;
};

// Dense reference path: full diagonalization, states at the given times.
std::vector<Eigen::VectorXcd> dense_propagate(const BorderedDiagonal& h, const Eigen::VectorXcd& psi0,
                                              const std::vector<double>& times);

}  // namespace gat
