#include "gat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "gat/errors.hpp"
#include "gat/propagator.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

void require_band(const Dispersion& disp, double omega_q) {
  if (!(omega_q >= disp.omega_min() && omega_q <= disp.omega_max()))
    fail(ErrorKind::OutOfBand, "omega_q outside the band of " + disp.name());
}

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

TrajectoryResult propagate_grid(const ModeGrid& grid, const Eigen::VectorXd& detuning, const Eigen::VectorXcd& g1,
                                const Eigen::VectorXcd* g2, double t_max, const SimOptions& opts) {
  if (opts.n_times < 2) fail(ErrorKind::InvalidConfig, "n_times must be at least 2");
  if (!(t_max > 0)) fail(ErrorKind::InvalidConfig, "t_max must be positive");
  const Eigen::Index n = grid.size();
  const Eigen::Index q = g2 ? 2 : 1;
  BorderedDiagonal h;
  h.mode_energy = detuning;
  h.coupling.resize(n, q);
  const double s = std::sqrt(grid.dk);
  h.coupling.col(0) = s * g1;
  if (g2) h.coupling.col(1) = s * *g2;

  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(q + n);
  psi0[0] = 1.0;
  const std::vector<double> checks = {0.25 * t_max, 0.5 * t_max, 0.75 * t_max, t_max};
  ChebyshevPropagator prop(h, psi0, t_max, checks);

  TrajectoryResult r;
  r.grid = grid;
  r.times = Eigen::VectorXd::LinSpaced(opts.n_times, 0.0, t_max);
  r.c1.resize(opts.n_times);
  r.c2 = Eigen::VectorXcd::Zero(opts.n_times);
  for (Eigen::Index i = 0; i < opts.n_times; ++i) {
    const Eigen::VectorXcd c = prop.emitters(r.times[i]);
    r.c1[i] = c[0];
    if (q == 2) r.c2[i] = c[1];
  }
  for (const auto& snap : prop.snapshots()) r.norm_error = std::max(r.norm_error, std::abs(snap.squaredNorm() - 1.0));
  if (r.norm_error > opts.norm_tol)
    fail(ErrorKind::DiscretizationError, "norm drift " + std::to_string(r.norm_error) +
                                             " exceeds tolerance; refine the mode grid or reduce t_max");
  const Eigen::VectorXcd& fin = prop.snapshots().back();
  r.ck_final.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) r.ck_final[k] = fin[q + k] * std::polar(1.0, detuning[k] * t_max) / s;

  if (q == 2) {
    Eigen::Index imax = 0;
    r.c2.cwiseAbs2().maxCoeff(&imax);
    r.p2_max = std::norm(r.c2[imax]);
    r.t_star = r.times[imax];
    if (r.p2_max > 0) {
      const double a = r.times[std::max<Eigen::Index>(imax - 1, 0)];
      const double b = r.times[std::min<Eigen::Index>(imax + 1, opts.n_times - 1)];
      auto p2 = [&](double t) { return std::norm(prop.emitters(t)[1]); };
      const double t = golden_max(p2, a, b, 1e-6);
      const double v = p2(t);
      if (v > r.p2_max) {
        r.p2_max = v;
        r.t_star = t;
      }
    }
  }
  return r;
}

}  // namespace

TrajectoryResult simulate(const SystemSpec& spec, const SimOptions& opts) {
  validate(spec.grid);
  require_band(spec.disp, spec.omega_q);
  if (spec.chiral_mode == ChiralMode::AssumeChiral && !spec.grid.all_positive())
    fail(ErrorKind::InvalidConfig, "AssumeChiral requires all grid k > 0");
  if (spec.pair.atom1.size() == 0) fail(ErrorKind::InvalidConfig, "empty leg set");
  if (!spec.pair.serial()) fail(ErrorKind::InvalidConfig, "pair is not in a serial configuration");
  const double t_max = opts.t_max > 0 ? opts.t_max : spec.pair.d / spec.disp.v_max() + 12.0;
  Eigen::VectorXd det(spec.grid.size());
  for (Eigen::Index i = 0; i < det.size(); ++i) det[i] = spec.disp.detuning(spec.grid.k[i], spec.omega_q);
  const Eigen::VectorXcd g1 = g_of_k(spec.pair.atom1, spec.grid.k);
  const Eigen::VectorXcd g2 = g_of_k(spec.pair.atom2(), spec.grid.k);
  return propagate_grid(spec.grid, det, g1, &g2, t_max, opts);
}

TrajectoryResult simulate_gk(const SampledCoupling& g1, const SampledCoupling& g2, const Dispersion& disp,
                             double omega_q, const SimOptions& opts) {
  if (!same_grid(g1.grid, g2.grid)) fail(ErrorKind::InvalidConfig, "couplings live on different grids");
  validate(g1.grid);
  require_band(disp, omega_q);
  double t_max = opts.t_max;
  if (!(t_max > 0)) {
    if (!g1.descriptor) fail(ErrorKind::InvalidConfig, "t_max required for couplings without a descriptor");
    t_max = g1.descriptor->d / disp.v_max() + 12.0;
  }
  Eigen::VectorXd det(g1.grid.size());
  for (Eigen::Index i = 0; i < det.size(); ++i) det[i] = disp.detuning(g1.grid.k[i], omega_q);
  return propagate_grid(g1.grid, det, g1.g, &g2.g, t_max, opts);
}

TrajectoryResult simulate_single(const SampledCoupling& g, const Dispersion& disp, double omega_q,
                                 const SimOptions& opts) {
  validate(g.grid);
  require_band(disp, omega_q);
  Eigen::VectorXd det(g.grid.size());
  for (Eigen::Index i = 0; i < det.size(); ++i) det[i] = disp.detuning(g.grid.k[i], omega_q);
  return propagate_grid(g.grid, det, g.g, nullptr, opts.t_max, opts);
}

std::pair<Eigen::VectorXcd, Eigen::VectorXcd> lab_frame(const TrajectoryResult& traj, double omega_q) {
  Eigen::VectorXcd a = traj.c1, b = traj.c2;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cd ph = std::polar(1.0, -omega_q * traj.times[i]);
    a[i] *= ph;
    b[i] *= ph;
  }
  return {a, b};
}

std::pair<double, double> transfer_fidelity(const TrajectoryResult& traj) {
  const Eigen::Index n = traj.c2.size();
  if (n == 0) return {0.0, 0.0};
  Eigen::Index imax = 0;
  const double grid_max = traj.c2.cwiseAbs2().maxCoeff(&imax);
  if (grid_max == 0.0) return {0.0, 0.0};
  if (imax == n - 1) fail(ErrorKind::WindowTooShort, "transfer maximum attained at t_max");
  return {std::max(traj.p2_max, grid_max), traj.p2_max >= grid_max ? traj.t_star : traj.times[imax]};
}

double left_moving_population(const TrajectoryResult& traj) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < traj.grid.size(); ++i)
    if (traj.grid.k[i] < 0) s += std::norm(traj.ck_final[i]) * traj.grid.dk;
  return s;
}

Eigen::VectorXcd c1_resolvent(const SampledCoupling& g, const Dispersion& disp, double omega_q,
                              const Eigen::VectorXd& times) {
  const ModeGrid& grid = g.grid;
  validate(grid);
  require_band(disp, omega_q);
  const Eigen::Index n = grid.size();
  // Spectral measure |g|^2 dk mapped to energy nodes E_j with cell widths w_j.
  Eigen::VectorXd E(n), w(n), f(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    E[j] = disp.detuning(grid.k[j], omega_q);
    w[j] = std::abs(disp.velocity(grid.k[j])) * grid.dk;
    f[j] = w[j] > 0 ? std::norm(g.g[j]) * grid.dk / w[j] : 0.0;
  }
  for (Eigen::Index j = 1; j < n; ++j)
    if (!(E[j] > E[j - 1]))
      fail(ErrorKind::InvalidConfig, "c1_resolvent needs a single-branch grid with increasing energies");
  if ((f.array() * w.array()).sum() == 0.0) return Eigen::VectorXcd::Ones(times.size());

  const double a = E[0] - 0.5 * w[0];
  const double b = E[n - 1] + 0.5 * w[n - 1];
  const bool uniform = disp.is_linear();
  Eigen::VectorXd pv(n);

  // Derivative of the density at the nodes.
  Eigen::VectorXd fp(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index l = std::max<Eigen::Index>(j - 1, 0), r = std::min<Eigen::Index>(j + 1, n - 1);
    fp[j] = (f[r] - f[l]) / (E[r] - E[l]);
  }

  if (uniform) {
    const double h = E[1] - E[0];
    // sum_{j != i} f_j / (i - j) by FFT convolution.
    Eigen::Index m = 1;
    while (m < 2 * n) m <<= 1;
    std::vector<cd> fa(m, 0.0), ka(m, 0.0), fa_hat, ka_hat, conv;
    for (Eigen::Index j = 0; j < n; ++j) fa[j] = f[j];
    for (Eigen::Index d = 1; d < n; ++d) {
      ka[d] = 1.0 / double(d);
      ka[m - d] = -1.0 / double(d);
    }
    Eigen::FFT<double> fft;
    fft.fwd(fa_hat, fa);
    fft.fwd(ka_hat, ka);
    for (Eigen::Index i = 0; i < m; ++i) fa_hat[i] *= ka_hat[i];
    fft.inv(conv, fa_hat);
    // Harmonic sums H_i - H_{n-1-i} = sum_{j != i} 1/(i - j).
    std::vector<double> H(n + 1, 0.0);
    for (Eigen::Index i = 1; i <= n; ++i) H[i] = H[i - 1] + 1.0 / double(i);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double smooth = conv[i].real() - f[i] * (H[i] - H[n - 1 - i]);
      pv[i] = smooth - h * fp[i] + f[i] * std::log((E[i] - a) / (b - E[i]));
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) s += w[j] * (f[j] - f[i]) / (E[i] - E[j]);
      pv[i] = s - w[i] * fp[i] + f[i] * std::log((E[i] - a) / (b - E[i]));
    }
  }

  // Spectral density of the emitter inside the band.
  Eigen::VectorXd A(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = E[i] - pv[i], im = pi * f[i];
    A[i] = (f[i] > 0) ? w[i] * f[i] / (re * re + im * im) : 0.0;
  }

  // Bound states outside [a, b]: roots of E - sum_j w_j f_j / (E - E_j).
  const double S = (w.array() * f.array()).sum();
  auto sigma = [&](double e, double* deriv) {
    double s = 0.0, ds = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double inv = 1.0 / (e - E[j]);
      s += w[j] * f[j] * inv;
      ds -= w[j] * f[j] * inv * inv;
    }
    if (deriv) *deriv = ds;
    return s;
  };
  std::vector<std::pair<double, double>> bound;
  auto find_root = [&](double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid - sigma(mid, nullptr) < 0) lo = mid; else hi = mid;
    }
    const double e = 0.5 * (lo + hi);
    double ds = 0.0;
    sigma(e, &ds);
    bound.push_back({e, 1.0 / (1.0 - ds)});
  };
  {
    const double edge = a - 1e-12 * (1.0 + std::abs(a));
    const double lo = std::min(0.0, a) - std::sqrt(S) - 1.0;
    if (edge - sigma(edge, nullptr) > 0) find_root(lo, edge);
    const double edge2 = b + 1e-12 * (1.0 + std::abs(b));
    const double hi = std::max(0.0, b) + std::sqrt(S) + 1.0;
    if (edge2 - sigma(edge2, nullptr) < 0) find_root(edge2, hi);
  }

  Eigen::VectorXcd out(times.size());
  for (Eigen::Index m = 0; m < times.size(); ++m) {
    const double t = times[m];
    cd s = 0.0;
    if (uniform) {
      const double h = E[1] - E[0];
      const cd step = std::polar(1.0, -h * t);
      cd ph = std::polar(1.0, -E[0] * t);
      for (Eigen::Index i = 0; i < n; ++i) {
        if ((i & 1023) == 0) ph = std::polar(1.0, -E[i] * t);
        s += A[i] * ph;
        ph *= step;
      }
    } else {
      for (Eigen::Index i = 0; i < n; ++i) s += A[i] * std::polar(1.0, -E[i] * t);
    }
    for (const auto& [e, z] : bound) s += z * std::polar(1.0, -e * t);
    out[m] = s;
  }
  return out;
}

}  // namespace gat
