#include "gat/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "gat/delay_model.hpp"
#include "gat/design.hpp"
#include "gat/dynamics.hpp"
#include "gat/errors.hpp"
#include "gat/mode_grid.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;
using Eigen::VectorXd;

std::mt19937_64 start_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

std::uint64_t start_seed(std::uint64_t seed, int index) {
  auto rng = start_rng(seed, index);
  return rng();
}

struct SpgSetup {
  std::function<double(const VectorXd&)> f;           // maximized
  std::function<void(VectorXd&)> project;             // onto the feasible set
  std::function<void(const VectorXd&, VectorXd&)> tangent;  // gradient to feasible directions at z
  int max_iters = 400;
  double fd_step = 1e-5;
  double rel_tol = 1e-8;
};

struct SpgOutcome {
  VectorXd z;
  double f = 0.0;
  int iters = 0;
  bool line_search_failed = false;
};

VectorXd fd_gradient(const SpgSetup& s, const VectorXd& z) {
  VectorXd g(z.size());
  VectorXd zp = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    zp[i] = zi + s.fd_step;
    const double fp = s.f(zp);
    zp[i] = zi - s.fd_step;
    const double fm = s.f(zp);
    zp[i] = zi;
    g[i] = (fp - fm) / (2.0 * s.fd_step);
  }
  s.tangent(z, g);
  return g;
}

// Projected gradient ascent with Armijo backtracking along the projection
// arc. The step direction is the gradient scaled by a limited-memory BFGS
// metric built from past (step, gradient change) pairs; it falls back to the
// plain gradient whenever the scaled direction is not an ascent direction.
SpgOutcome spg_maximize(const SpgSetup& s, VectorXd z) {
  s.project(z);
  SpgOutcome out;
  double fz = s.f(z);
  VectorXd g = fd_gradient(s, z);
  std::vector<double> trace{fz};
  std::vector<VectorXd> S, Y;
  std::vector<double> rho;
  int it = 0;
  for (; it < s.max_iters; ++it) {
    if (g.norm() < 1e-10) break;
    VectorXd p = g;
    double a0 = 1.0;
    if (!S.empty()) {
      // two-loop recursion on the minimization of -f
      std::vector<double> al(S.size());
      VectorXd q = g;
      for (int i = int(S.size()) - 1; i >= 0; --i) {
        al[i] = rho[i] * S[i].dot(q);
        q -= al[i] * Y[i];
      }
      q *= S.back().dot(Y.back()) / Y.back().squaredNorm();
      for (std::size_t i = 0; i < S.size(); ++i) {
        const double b = rho[i] * Y[i].dot(q);
        q += (al[i] - b) * S[i];
      }
      p = q;
      if (p.dot(g) <= 1e-12 * p.norm() * g.norm()) {
        p = g;
        S.clear();
        Y.clear();
        rho.clear();
        a0 = 0.1 / g.norm();
      }
    } else {
      a0 = 0.1 / g.norm();
    }
    bool accepted = false;
    VectorXd zn;
    double fn = 0.0;
    double a = a0;
    for (int bt = 0; bt < 40; ++bt) {
      zn = z + a * p;
      s.project(zn);
      fn = s.f(zn);
      if (fn >= fz + 1e-4 * g.dot(zn - z) && fn >= fz) {
        accepted = true;
        break;
      }
      a *= 0.5;
    }
    if (!accepted) {
      if (it == 0) out.line_search_failed = true;
      break;
    }
    const VectorXd gn = fd_gradient(s, zn);
    const VectorXd sv = zn - z;
    const VectorXd yv = g - gn;  // gradient change of -f
    const double sy = sv.dot(yv);
    if (sy > 1e-12 * sv.norm() * yv.norm()) {
      S.push_back(sv);
      Y.push_back(yv);
      rho.push_back(1.0 / sy);
      if (S.size() > 8) {
        S.erase(S.begin());
        Y.erase(Y.begin());
        rho.erase(rho.begin());
      }
    }
    z = zn;
    fz = fn;
    g = gn;
    trace.push_back(fz);
    const std::size_t m = trace.size();
    if (m > 5 && std::abs(trace[m - 1] - trace[m - 6]) <= s.rel_tol * std::max(std::abs(trace[m - 1]), 1e-12)) {
      ++it;
      break;
    }
  }
  out.z = z;
  out.f = fz;
  out.iters = it;
  return out;
}

// z = (x_1..x_N, g_1..g_N)
std::vector<TildeLeg> unpack_real(const VectorXd& z) {
  const Eigen::Index n = z.size() / 2;
  std::vector<TildeLeg> legs;
  legs.reserve(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (z[n + i] != 0.0) legs.push_back({z[i], cd(z[n + i], 0.0)});
  return legs;
}

VectorXd pack_real(const std::vector<TildeLeg>& legs) {
  const Eigen::Index n = Eigen::Index(legs.size());
  VectorXd z(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z[i] = legs[i].x;
    z[n + i] = legs[i].gt.real();
  }
  return z;
}

bool linear_chiral(const Dispersion& d) { return d.is_linear() && d.is_chiral(); }

std::pair<double, double> grid_fidelity(const FidelityProblem& p, const std::vector<TildeLeg>& legs) {
  const double k_q = p.disp.k_of_omega(p.omega_q);
  SystemSpec spec;
  spec.pair.atom1 = from_tilde(legs, k_q);
  spec.pair.d = p.d;
  spec.disp = p.disp;
  spec.omega_q = p.omega_q;
  spec.grid = clip_to_band(chiral_grid(k_q, p.grid_K, p.grid_n), p.disp);
  spec.chiral_mode = ChiralMode::AssumeChiral;
  const TrajectoryResult r = simulate(spec);
  return {r.p2_max, r.t_star};
}

}  // namespace

double position_window(const FidelityProblem& p) {
  const double lambda_q = 2.0 * pi / p.disp.k_of_omega(p.omega_q);
  const double L = p.window > 0 ? p.window : 2.0 * p.n_legs;
  return std::min(L, 0.5 * p.d - lambda_q);
}

std::pair<double, double> pair_fidelity(const FidelityProblem& p, const std::vector<TildeLeg>& legs) {
  if (legs.empty()) return {0.0, 0.0};
  if (!linear_chiral(p.disp)) return grid_fidelity(p, legs);
  std::vector<double> x;
  std::vector<double> g;
  double x_max = 0.0;
  for (const auto& l : legs) {
    x.push_back(l.x);
    g.push_back(l.gt.real());
    x_max = std::max(x_max, l.x);
  }
  // Serial chiral pairs: c2 only shifts in time with d, so the flight time is
  // cut down to a fixed short gap.
  const double d_eff = std::min(p.d, 2.0 * position_window(p) + 1.0);
  DelayOptions o;
  o.dt = p.dt;
  o.t_max = d_eff + 12.0;
  o.keep_trajectory = false;
  o.early_stop = true;
  const DelayResult r = simulate_delay_pair<double>(x, g, d_eff, o);
  return {r.p2_max, r.t_star + (p.d - d_eff)};
}

std::vector<TildeLeg> pad_legs(const std::vector<TildeLeg>& legs, const std::vector<double>& new_x) {
  std::vector<TildeLeg> out = legs;
  for (double x : new_x) out.push_back({x, cd(0.0, 0.0)});
  return out;
}

OptimResult optimize_fidelity(const FidelityProblem& problem) {
  if (problem.n_legs < 1) fail(ErrorKind::InvalidConfig, "n_legs must be at least 1");
  if (problem.n_starts < 1) fail(ErrorKind::InvalidConfig, "n_starts must be at least 1");
  if (!(problem.tau_constraint > 0)) fail(ErrorKind::InvalidConfig, "tau_constraint must be positive");
  const int n = problem.n_legs;
  const double L = position_window(problem);
  if (!(L > 0)) fail(ErrorKind::InvalidConfig, "position window is empty (d too small)");
  const double v = std::abs(problem.disp.velocity(problem.disp.k_of_omega(problem.omega_q)));
  const double radius = std::sqrt(v / (pi * problem.tau_constraint));

  SpgSetup s;
  s.max_iters = problem.max_iters;
  s.fd_step = problem.fd_step;
  s.rel_tol = problem.rel_tol;
  s.f = [&](const VectorXd& z) { return pair_fidelity(problem, unpack_real(z)).first; };
  s.project = [&](VectorXd& z) {
    for (int i = 0; i < n; ++i) z[i] = std::clamp(z[i], 0.0, L);
    auto g = z.tail(n);
    const double nrm = g.norm();
    if (nrm > 0) g *= radius / nrm;
    else g.setConstant(radius / std::sqrt(double(n)));
  };
  s.tangent = [&](const VectorXd& z, VectorXd& grad) {
    const VectorXd u = z.tail(n).normalized();
    grad.tail(n) -= grad.tail(n).dot(u) * u;
  };

  OptimResult res;
  int best = -1;
  VectorXd best_z;
  for (int k = 0; k < problem.n_starts; ++k) {
    VectorXd z(2 * n);
    const std::uint64_t seed = start_seed(problem.rng_seed, k);
    if (k < int(problem.warm_starts.size())) {
      if (int(problem.warm_starts[k].size()) != n) fail(ErrorKind::InvalidConfig, "warm start has wrong leg count");
      z = pack_real(problem.warm_starts[k]);
    } else {
      auto rng = start_rng(problem.rng_seed, k);
      std::uniform_real_distribution<double> ux(0.0, L);
      std::normal_distribution<double> ng;
      for (int i = 0; i < n; ++i) z[i] = ux(rng);
      for (int i = 0; i < n; ++i) z[n + i] = ng(rng);
    }
    const SpgOutcome o = spg_maximize(s, z);
    res.history.push_back({k, seed, o.f, o.iters, o.line_search_failed});
    if (!o.line_search_failed && (best < 0 || o.f > res.history[best].objective)) {
      best = k;
      best_z = o.z;
    }
  }
  if (best < 0) fail(ErrorKind::OptimizationFailed, "every start failed its first line search");

  std::vector<TildeLeg> legs;
  for (int i = 0; i < n; ++i) legs.push_back({best_z[i], cd(best_z[n + i], 0.0)});
  std::sort(legs.begin(), legs.end(), [](const TildeLeg& a, const TildeLeg& b) { return a.x < b.x; });
  res.best_tilde = legs;
  const double k_q = problem.disp.k_of_omega(problem.omega_q);
  std::vector<TildeLeg> nz;
  for (const auto& l : legs)
    if (l.gt != 0.0) nz.push_back(l);
  res.best = from_tilde(nz, k_q);
  const auto [p2, ts] = pair_fidelity(problem, legs);
  res.p2_max = p2;
  res.t_star = ts;
  return res;
}

std::vector<OptimResult> optimize_ladder(const FidelityProblem& base, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) fail(ErrorKind::InvalidConfig, "invalid leg-count range");
  std::vector<OptimResult> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    FidelityProblem p = base;
    p.n_legs = n;
    p.warm_starts.clear();
    if (!out.empty()) {
      const double L = position_window(p);
      const auto& prev = out.back().best_tilde;
      // New zero-strength leg between each pair of neighbours and just
      // outside both ends of the previous optimum.
      std::vector<double> xs;
      for (const auto& l : prev) xs.push_back(l.x);
      std::sort(xs.begin(), xs.end());
      const double gap = xs.size() > 1 ? (xs.back() - xs.front()) / double(xs.size() - 1) : 0.1 * L;
      std::vector<double> spots{std::max(xs.front() - gap, 0.0), std::min(xs.back() + gap, L)};
      for (std::size_t i = 1; i < xs.size(); ++i) spots.push_back(0.5 * (xs[i - 1] + xs[i]));
      for (double x : spots) {
        if (int(p.warm_starts.size()) >= p.n_starts) break;
        p.warm_starts.push_back(pad_legs(prev, {x}));
      }
    }
    out.push_back(optimize_fidelity(p));
  }
  return out;
}

LegSet rescale(const LegSet& legs, double s, double k_q) {
  if (!(s > 0)) fail(ErrorKind::InvalidConfig, "scale factor must be positive");
  LegSet out;
  out.legs.reserve(legs.size());
  const double r = 1.0 / std::sqrt(s);
  for (const auto& l : legs.legs) out.legs.push_back({l.x * s, l.g * r * std::polar(1.0, k_q * (l.x - l.x * s))});
  return out;
}

PulseTarget design_pulse_target(const DecayLaw& decay, double K, Eigen::Index n, double x0) {
  if (n < 2 || !(K > 0)) fail(ErrorKind::InvalidConfig, "pulse target grid needs n >= 2 and K > 0");
  PulseTarget t;
  t.dk = Eigen::VectorXd::LinSpaced(n, -K, K);
  t.xi.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // |g| |c~1| = sqrt(-Im c~1 / pi) for the linear chiral design
    const double im = -laplace_c1(decay, t.dk[i]).imag();
    t.xi[i] = std::sqrt(std::max(im, 0.0) / pi) * std::polar(1.0, -t.dk[i] * x0);
  }
  const double h = t.dk[1] - t.dk[0];
  t.xi /= std::sqrt(t.xi.squaredNorm() * h);
  return t;
}

double pulse_mismatch(const PulseTarget& target, const std::vector<TildeLeg>& legs) {
  const Eigen::Index m = target.dk.size();
  const double w = m > 1 ? (target.dk[m - 1] - target.dk[0]) / double(m - 1) : 1.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) s += std::norm(pulse_tilde(legs, target.dk[i]) - target.xi[i]);
  return std::sqrt(s * w);
}

PulseResult optimize_pulse_shape(const PulseProblem& problem) {
  const PulseTarget& t = problem.target;
  if (t.dk.size() < 2 || t.dk.size() != t.xi.size()) fail(ErrorKind::InvalidConfig, "pulse target grid is malformed");
  const double w = (t.dk[t.dk.size() - 1] - t.dk[0]) / double(t.dk.size() - 1);
  const double nrm = t.xi.squaredNorm() * w;
  if (std::abs(nrm - 1.0) > 1e-6) fail(ErrorKind::InvalidConfig, "pulse target is not normalized");
  if (problem.n_legs < 1 || problem.n_starts < 1) fail(ErrorKind::InvalidConfig, "n_legs and n_starts must be positive");
  const int n = problem.n_legs;
  const double L = problem.window > 0 ? problem.window : 2.0 * n;

  // z = (x, Re g~, Im g~)
  auto unpack = [n](const VectorXd& z) {
    std::vector<TildeLeg> legs(n);
    for (int i = 0; i < n; ++i) legs[i] = {z[i], cd(z[n + i], z[2 * n + i])};
    return legs;
  };
  SpgSetup s;
  s.max_iters = problem.max_iters;
  s.fd_step = problem.fd_step;
  s.rel_tol = problem.rel_tol;
  s.f = [&](const VectorXd& z) { return -pulse_mismatch(t, unpack(z)); };
  s.project = [&](VectorXd& z) {
    for (int i = 0; i < n; ++i) z[i] = std::clamp(z[i], 0.0, L);
  };
  s.tangent = [](const VectorXd&, VectorXd&) {};

  PulseResult res;
  int best = -1;
  VectorXd best_z;
  for (int k = 0; k < problem.n_starts; ++k) {
    VectorXd z(3 * n);
    const std::uint64_t seed = start_seed(problem.rng_seed, k);
    if (k < int(problem.warm_starts.size())) {
      const auto& ws = problem.warm_starts[k];
      if (int(ws.size()) != n) fail(ErrorKind::InvalidConfig, "warm start has wrong leg count");
      for (int i = 0; i < n; ++i) {
        z[i] = ws[i].x;
        z[n + i] = ws[i].gt.real();
        z[2 * n + i] = ws[i].gt.imag();
      }
    } else {
      auto rng = start_rng(problem.rng_seed, k);
      std::uniform_real_distribution<double> ux(0.0, L);
      std::normal_distribution<double> ng;
      for (int i = 0; i < n; ++i) z[i] = ux(rng);
      double ss = 0.0;
      for (int i = n; i < 3 * n; ++i) {
        z[i] = ng(rng);
        ss += z[i] * z[i];
      }
      z.tail(2 * n) *= 1.0 / std::sqrt(pi * ss);
    }
    const SpgOutcome o = spg_maximize(s, z);
    res.history.push_back({k, seed, -o.f, o.iters, o.line_search_failed});
    if (!o.line_search_failed && (best < 0 || -o.f < res.history[best].objective)) {
      best = k;
      best_z = o.z;
    }
  }
  if (best < 0) fail(ErrorKind::OptimizationFailed, "every start failed its first line search");
  res.best = unpack(best_z);
  std::sort(res.best.begin(), res.best.end(), [](const TildeLeg& a, const TildeLeg& b) { return a.x < b.x; });
  res.f_target = pulse_mismatch(t, res.best);
  return res;
}

double fidelity_of_target_pulses(const std::vector<TildeLeg>& legs, double d, double dt) {
  std::vector<double> x;
  std::vector<cd> g;
  for (const auto& l : legs) {
    if (l.x >= 0.5 * d) fail(ErrorKind::InvalidConfig, "legs must lie left of d/2");
    x.push_back(l.x);
    g.push_back(l.gt);
  }
  DelayOptions o;
  o.dt = dt;
  o.keep_trajectory = false;
  return simulate_delay_pair<cd>(x, g, d, o).p2_max;
}

}  // namespace gat
