#include "gat/propagator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "gat/errors.hpp"
#include "gat/special_functions.hpp"

namespace gat {

using cd = std::complex<double>;

void BorderedDiagonal::apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
  const Eigen::Index q = n_emitters();
  const Eigen::Index n = mode_energy.size();
  out.resize(q + n);
  auto modes_in = in.segment(q, n);
  out.segment(q, n) = mode_energy.cwiseProduct(modes_in);
  for (Eigen::Index a = 0; a < q; ++a) {
    out[a] = coupling.col(a).transpose() * modes_in;
    out.segment(q, n) += coupling.col(a).conjugate() * in[a];
  }
}

Eigen::MatrixXcd BorderedDiagonal::dense() const {
  const Eigen::Index q = n_emitters();
  const Eigen::Index n = mode_energy.size();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(q + n, q + n);
  H.diagonal().tail(n) = mode_energy.cast<cd>();
  for (Eigen::Index a = 0; a < q; ++a) {
    H.block(a, q, 1, n) = coupling.col(a).transpose();
    H.block(q, a, n, 1) = coupling.col(a).conjugate();
  }
  return H;
}

ChebyshevPropagator::ChebyshevPropagator(const BorderedDiagonal& h, const Eigen::VectorXcd& psi0, double t_max,
                                         const std::vector<double>& snapshot_times)
    : t_max_(t_max) {
  if (!(t_max >= 0)) fail(ErrorKind::InvalidConfig, "propagation time must be non-negative");
  // Spectral bounds: diagonal range widened by the spectral norm of the
  // border, which the Frobenius norm bounds.
  const double border = h.coupling.norm();
  double lo = 0.0, hi = 0.0;
  if (h.mode_energy.size() > 0) {
    lo = std::min(lo, h.mode_energy.minCoeff());
    hi = std::max(hi, h.mode_energy.maxCoeff());
  }
  lo -= border;
  hi += border;
  center_ = 0.5 * (hi + lo);
  radius_ = std::max(0.5 * (hi - lo) * (1.0 + 1e-6), 1e-12);

  const double x = radius_ * t_max;
  order_ = int(std::ceil(x + 12.0 * std::cbrt(std::max(x, 1.0)) + 30.0));

  const Eigen::Index q = h.n_emitters();
  const Eigen::Index dim = h.dim();
  emitter_moments_.resize(order_ + 1, q);

  std::vector<std::vector<cd>> snap_coeffs(snapshot_times.size());
  for (size_t s = 0; s < snapshot_times.size(); ++s) {
    if (snapshot_times[s] > t_max * (1 + 1e-12) || snapshot_times[s] < 0)
      fail(ErrorKind::InvalidConfig, "snapshot time outside [0, t_max]");
    coefficients(snapshot_times[s], snap_coeffs[s]);
  }
  snapshots_.assign(snapshot_times.size(), Eigen::VectorXcd::Zero(dim));

  // T_0 = psi0, T_1 = X psi0, T_{n+1} = 2 X T_n - T_{n-1}, X = (H - c)/R.
  Eigen::VectorXcd prev = psi0, cur(dim), next(dim), tmp(dim);
  h.apply(prev, tmp);
  cur = (tmp - center_ * prev) / radius_;
  auto record = [&](int n, const Eigen::VectorXcd& v) {
    emitter_moments_.row(n) = v.head(q).transpose();
    for (size_t s = 0; s < snapshots_.size(); ++s) snapshots_[s] += snap_coeffs[s][n] * v;
  };
  record(0, prev);
  if (order_ >= 1) record(1, cur);
  for (int n = 1; n < order_; ++n) {
    h.apply(cur, tmp);
    next = (2.0 / radius_) * (tmp - center_ * cur) - prev;
    record(n + 1, next);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
}

void ChebyshevPropagator::coefficients(double t, std::vector<cd>& a) const {
  std::vector<double> j;
  bessel_j_sequence(radius_ * t, order_, j);
  a.resize(order_ + 1);
  const cd phase = std::polar(1.0, -center_ * t);
  static const cd powers[4] = {cd(1, 0), cd(0, -1), cd(-1, 0), cd(0, 1)};
  for (int n = 0; n <= order_; ++n) a[n] = (n == 0 ? 1.0 : 2.0) * j[n] * powers[n % 4] * phase;
}

Eigen::VectorXcd ChebyshevPropagator::emitters(double t) const {
  if (t > t_max_ * (1 + 1e-12) || t < 0) fail(ErrorKind::InvalidConfig, "time outside the propagated window");
  std::vector<cd> a;
  coefficients(t, a);
  Eigen::Map<const Eigen::VectorXcd> av(a.data(), Eigen::Index(a.size()));
  return emitter_moments_.transpose() * av;
}

std::vector<Eigen::VectorXcd> dense_propagate(const BorderedDiagonal& h, const Eigen::VectorXcd& psi0,
                                              const std::vector<double>& times) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
  if (es.info() != Eigen::Success) fail(ErrorKind::DiscretizationError, "eigensolver failed");
  const Eigen::VectorXcd overlap = es.eigenvectors().adjoint() * psi0;
  std::vector<Eigen::VectorXcd> out;
  out.reserve(times.size());
  for (double t : times) {
    Eigen::VectorXcd w(overlap.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = overlap[i] * std::polar(1.0, -es.eigenvalues()[i] * t);
    out.push_back(es.eigenvectors() * w);
  }
  return out;
}

}  // namespace gat
