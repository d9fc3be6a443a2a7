#include "gat/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gat/delay_model.hpp"
#include "gat/design.hpp"
#include "gat/dynamics.hpp"
#include "gat/errors.hpp"
#include "gat/mode_grid.hpp"
#include "gat/special_functions.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * double(sorted.size() - 1);
  const std::size_t i = std::size_t(std::floor(pos));
  const std::size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (pos - double(i)) * (sorted[j] - sorted[i]);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32),
                    0x7f4a7c15u};
  return std::mt19937_64(seq);
}

}  // namespace

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  std::vector<double> w = v;
  std::sort(w.begin(), w.end());
  double sum = 0.0;
  for (double x : w) sum += x;
  s.mean = sum / double(w.size());
  double ss = 0.0;
  for (double x : w) ss += (x - s.mean) * (x - s.mean);
  s.std = w.size() > 1 ? std::sqrt(ss / double(w.size() - 1)) : 0.0;
  s.min = w.front();
  s.max = w.back();
  s.q05 = quantile(w, 0.05);
  s.q25 = quantile(w, 0.25);
  s.q50 = quantile(w, 0.50);
  s.q75 = quantile(w, 0.75);
  s.q95 = quantile(w, 0.95);
  return s;
}

std::uint64_t config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

StudyReport disorder_sweep(const DisorderStudy& study, const Dispersion& disp, double omega_q, double d, double dt) {
  if (!(study.sigma >= 0)) fail(ErrorKind::InvalidConfig, "sigma must be non-negative");
  if (study.n_samples < 1) fail(ErrorKind::InvalidConfig, "n_samples must be positive");
  if (study.base.size() == 0) fail(ErrorKind::InvalidConfig, "disorder study needs a base leg set");
  if (!(disp.is_linear() && disp.is_chiral()))
    fail(ErrorKind::UnsupportedDispersion, "disorder sweeps run on the linear chiral band");
  const double k_q = disp.k_of_omega(omega_q);
  GiantAtomPair pair{study.base, d};
  if (!pair.serial()) fail(ErrorKind::InvalidConfig, "base configuration is not serial at this distance");
  const LegSet a1 = study.base;
  const LegSet a2 = pair.atom2();

  StudyReport rep;
  rep.name = "disorder";
  rep.seed = study.seed;
  rep.columns = {"sample", "p2", "t_star", "retained"};
  std::string cfg = "disorder sigma=" + std::to_string(study.sigma) + " n=" + std::to_string(study.n_samples) +
                    " d=" + std::to_string(d) + " omega_q=" + std::to_string(omega_q) + " legs=";
  for (const auto& l : a1.legs)
    cfg += std::to_string(l.x) + ":" + std::to_string(l.g.real()) + ":" + std::to_string(l.g.imag()) + ";";
  rep.config_hash = config_hash(cfg);

  DelayOptions o;
  o.dt = dt;
  o.keep_trajectory = false;
  o.early_stop = true;
  for (int i = 0; i < study.n_samples; ++i) {
    auto rng = sample_rng(study.seed, std::uint64_t(i));
    std::normal_distribution<double> noise(0.0, 1.0);
    LegSet p1 = a1, p2 = a2;
    for (auto& l : p1.legs) l.x += study.sigma * noise(rng);
    for (auto& l : p2.legs) l.x += study.sigma * noise(rng);
    double hi1 = -1e300, lo2 = 1e300;
    for (const auto& l : p1.legs) hi1 = std::max(hi1, l.x);
    for (const auto& l : p2.legs) lo2 = std::min(lo2, l.x);
    if (!(hi1 < lo2)) {
      ++rep.n_discarded;
      rep.rows.push_back({double(i), 0.0, 0.0, 0.0});
      continue;
    }
    const DelayResult r = simulate_delay(p1, p2, k_q, o);
    rep.samples.push_back(r.p2_max);
    rep.rows.push_back({double(i), r.p2_max, r.t_star, 1.0});
  }
  rep.n_retained = int(rep.samples.size());
  rep.summary = summarize(rep.samples);
  return rep;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::InvalidConfig, "linear fit needs two or more points");
  const double n = double(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

ScalingResult scaling_study(const FidelityProblem& base, int n_lo, int n_hi, int fit_lo) {
  if (n_lo < 1 || n_hi > 13 || n_hi < n_lo) fail(ErrorKind::InvalidConfig, "leg-count range must lie in [1, 13]");
  ScalingResult out;
  out.optima = optimize_ladder(base, n_lo, n_hi);
  out.report.name = "scaling";
  out.report.seed = base.rng_seed;
  out.report.columns = {"n_legs", "p2_max", "inv_infidelity", "t_star"};
  std::vector<double> xs, ys;
  for (int n = n_lo; n <= n_hi; ++n) {
    const OptimResult& r = out.optima[std::size_t(n - n_lo)];
    const double inv = 1.0 / (1.0 - r.p2_max);
    out.report.rows.push_back({double(n), r.p2_max, inv, r.t_star});
    out.report.samples.push_back(r.p2_max);
    if (n >= fit_lo) {
      xs.push_back(double(n));
      ys.push_back(inv);
    }
  }
  if (xs.size() >= 2) {
    out.fit = linear_fit(xs, ys);
    out.report.scalars["slope"] = out.fit.slope;
    out.report.scalars["intercept"] = out.fit.intercept;
    out.report.scalars["r2"] = out.fit.r2;
  }
  out.report.n_retained = int(out.report.samples.size());
  out.report.summary = summarize(out.report.samples);
  out.report.config_hash = config_hash("scaling n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi) +
                                       " starts=" + std::to_string(base.n_starts) + " d=" + std::to_string(base.d));
  return out;
}

StudyReport dispersion_scan(const std::vector<TildeLeg>& legs, const std::vector<double>& W_list,
                            const std::vector<double>& d_list, bool reoptimize, const FidelityProblem& base) {
  if (legs.empty()) fail(ErrorKind::InvalidConfig, "dispersion scan needs legs");
  StudyReport rep;
  rep.name = "dispersion_scan";
  rep.seed = base.rng_seed;
  rep.columns = {"W", "d", "p2_fixed", "p2_reopt"};
  std::string cfg = "dispersion_scan reopt=" + std::to_string(reoptimize);
  for (double W : W_list) {
    if (!(W > 0)) fail(ErrorKind::InvalidConfig, "bandwidth W must be positive");
    cfg += " W=" + std::to_string(W);
    for (double d : d_list) {
      FidelityProblem p = base;
      p.disp = Dispersion(Sinusoidal{base.omega_q, W, 1.0});
      p.d = d;
      p.n_legs = int(legs.size());
      const double p2_fixed = pair_fidelity(p, legs).first;
      double p2_re = std::nan("");
      if (reoptimize) {
        p.warm_starts = {legs};
        p.n_starts = std::max(1, base.n_starts);
        p2_re = optimize_fidelity(p).p2_max;
      }
      rep.rows.push_back({W, d, p2_fixed, p2_re});
      rep.samples.push_back(p2_fixed);
    }
  }
  for (double d : d_list) cfg += " d=" + std::to_string(d);
  rep.config_hash = config_hash(cfg);
  rep.n_retained = int(rep.samples.size());
  rep.summary = summarize(rep.samples);
  return rep;
}

std::vector<DispersionProfile> continuum_dispersion_profiles(const Gaussian& decay, const std::vector<double>& W_list,
                                                             double d, double T, const ProfileScanOptions& opts) {
  std::vector<DispersionProfile> out;
  for (double W : W_list) {
    const Dispersion disp = W > 0 ? Dispersion(Sinusoidal{opts.omega_q, W, 1.0}) : Dispersion(LinearChiral{});
    const double k_q = disp.k_of_omega(opts.omega_q);
    ModeGrid grid = chiral_grid(k_q, opts.K, opts.n_modes);
    if (W > 0) grid = clip_to_band(grid, disp);
    const SampledCoupling g1 = design_continuum(DecayLaw(decay), disp, opts.omega_q, grid, d, T, 0.0);
    ProfileOptions po;
    po.include_carrier = false;
    DispersionProfile dp;
    dp.W = W;
    dp.profile = spatial_profile(g1, opts.x_lo, opts.x_hi, opts.n_x, po);
    const Eigen::VectorXd w = dp.profile.g.cwiseAbs2();
    const double m0 = w.sum();
    const double m1 = w.dot(dp.profile.x) / m0;
    dp.second_moment = w.dot((dp.profile.x.array() - m1).square().matrix()) / m0;
    if (opts.simulate) {
      const SampledCoupling g2 = mirror_coupling(g1, d);
      SimOptions so;
      so.t_max = T + 12.0;
      dp.p2_max = simulate_gk(g1, g2, disp, opts.omega_q, so).p2_max;
    }
    out.push_back(std::move(dp));
  }
  return out;
}

StudyReport appendix_a_pipeline(const AppendixAOptions& opts) {
  const double k_q = opts.omega_q;
  const double lambda_q = 2 * pi / k_q;
  const double half = 0.5 * opts.extent;

  // Exponential-design profile in closed form, tabulated on an even point
  // count so x = 0 (log singularity of K0) is never a node.
  const Eigen::Index n_tab = 20000;
  SpatialProfile prof;
  prof.x = Eigen::VectorXd::LinSpaced(n_tab, -half, half);
  prof.g.resize(n_tab);
  prof.carrier_k = k_q;
  for (Eigen::Index i = 0; i < n_tab; ++i) {
    const double x = prof.x[i], ax = std::abs(x);
    const double env = (bessel_k0(ax) + (x > 0 ? 1.0 : -1.0) * bessel_k1(ax)) / std::pow(pi, 1.5);
    prof.g[i] = cd(0.0, -1.0) * env * std::polar(1.0, -k_q * x);
  }
  LegSet sampled = sample_legs(prof, opts.n_legs, -half, half, lambda_q);
  for (auto& l : sampled.legs) l.x += half;
  const LegSet real = realify_legs(sampled, k_q);
  const LegSet doubled = double_legs_chiral(real, lambda_q);

  SystemSpec spec;
  spec.pair = GiantAtomPair{doubled, opts.d};
  spec.disp = Dispersion(LinearBidirectional{});
  spec.omega_q = opts.omega_q;
  spec.grid = bidirectional_grid(k_q, opts.K, opts.n_modes);
  spec.chiral_mode = ChiralMode::Bidirectional;
  const TrajectoryResult tr = simulate(spec);

  std::set<long long> phases;
  for (const auto& l : doubled.legs) {
    double ph = std::arg(l.g);
    if (ph < -1e-9) ph += 2 * pi;
    phases.insert(std::llround(ph * 1e6));
  }

  StudyReport rep;
  rep.name = "appendix_a";
  rep.columns = {"x", "abs_g", "phase"};
  for (const auto& l : doubled.legs) rep.rows.push_back({l.x, std::abs(l.g), std::arg(l.g)});
  rep.scalars["p2_max"] = tr.p2_max;
  rep.scalars["t_star"] = tr.t_star;
  rep.scalars["left_population"] = left_moving_population(tr);
  rep.scalars["n_phases"] = double(phases.size());
  rep.scalars["g_minus"] = std::abs(g_of_k(doubled, -k_q));
  rep.scalars["g_plus_error"] = std::abs(g_of_k(doubled, k_q) - g_of_k(real, k_q));
  rep.scalars["norm_error"] = tr.norm_error;
  rep.samples = {tr.p2_max};
  rep.n_retained = 1;
  rep.summary = summarize(rep.samples);
  rep.config_hash = config_hash("appendix_a n=" + std::to_string(opts.n_legs) + " extent=" +
                                std::to_string(opts.extent) + " d=" + std::to_string(opts.d) +
                                " omega_q=" + std::to_string(opts.omega_q));
  return rep;
}

}  // namespace gat
