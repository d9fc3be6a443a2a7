#include "gat/delay_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <type_traits>

#include "gat/errors.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

template <class S>
S conj_s(const S& v) {
  if constexpr (std::is_floating_point_v<S>) return v; else return std::conj(v);
}

template <class S>
double norm_s(const S& v) {
  if constexpr (std::is_floating_point_v<S>) return v * v; else return std::norm(v);
}

struct Lookup {
  int shift = 0;     // base node offset: nodes n - shift .. n - shift + 3
  double w[4] = {0, 0, 0, 0};
  bool exact = false;  // delay is a whole number of steps
  int exact_shift = 0;
};

Lookup make_lookup(double delay, double h) {
  Lookup lk;
  const double r = delay / h;
  const double D = std::floor(r);
  const double phi = r - D;
  if (phi < 1e-12 || phi > 1 - 1e-12) {
    lk.exact = true;
    lk.exact_shift = int(std::llround(r));
    return lk;
  }
  const int Di = int(D);
  double u;
  if (Di >= 1) {
    lk.shift = Di + 2;
    u = 2.0 - phi;
  } else {
    lk.shift = 3;
    u = 3.0 - phi;
  }
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i) w *= (u - j) / double(i - j);
    lk.w[i] = w;
  }
  return lk;
}

struct Event {
  double t;
  cd mag;
};

}  // namespace

template <class Scalar>
DelayResult simulate_delay(std::vector<DelayLeg<Scalar>> legs, const DelayOptions& opts) {
  if (legs.empty()) fail(ErrorKind::InvalidConfig, "delay model needs at least one leg");
  if (!(opts.dt > 0)) fail(ErrorKind::InvalidConfig, "delay model step must be positive");
  std::stable_sort(legs.begin(), legs.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  const int L = int(legs.size());
  for (const auto& l : legs)
    if (l.emitter != 0 && l.emitter != 1) fail(ErrorKind::InvalidConfig, "emitter index must be 0 or 1");

  const double t_req = opts.t_max > 0 ? opts.t_max : legs.back().x - legs.front().x + 12.0;
  // Fixed step: the grid must not move with the leg parameters.
  const double h = opts.dt;
  const int n_steps = std::max(4, int(std::ceil(t_req / h - 1e-9)));

  double a[2] = {0, 0};
  for (const auto& l : legs) a[l.emitter] += pi * norm_s(l.gt);
  double decay[2], w0[2], w1[2], e1[2];
  for (int q = 0; q < 2; ++q) {
    const double ah = a[q] * h;
    decay[q] = std::exp(-ah);
    if (ah < 1e-6) {
      e1[q] = h * (1 - 0.5 * ah);
      w1[q] = h * (0.5 - ah / 6.0);
    } else {
      e1[q] = -std::expm1(-ah) / a[q];
      w1[q] = (ah - 1.0 + decay[q]) / (a[q] * a[q] * h);
    }
    w0[q] = e1[q] - w1[q];
  }

  std::vector<Lookup> look(L);
  int min_shift = 1 << 30;
  for (int l = 1; l < L; ++l) {
    look[l] = make_lookup(legs[l].x - legs[l - 1].x, h);
    const int s = look[l].exact ? look[l].exact_shift : look[l].shift - 2;
    min_shift = std::min(min_shift, s);
  }
  const bool single_pass = min_shift >= 2;

  // Step parts of the source: atom-1 legs carry the c1 jump at t = 0 down the
  // cascade; they are integrated exactly instead of interpolated.
  std::vector<Event> events[2];
  for (int l = 0; l < L; ++l)
    for (int m = 0; m < l; ++m)
      if (legs[m].emitter == 0)
        events[legs[l].emitter].push_back(
            {legs[l].x - legs[m].x, -2.0 * pi * cd(legs[l].gt) * std::conj(cd(legs[m].gt))});
  for (auto& ev : events) std::sort(ev.begin(), ev.end(), [](const Event& p, const Event& q) { return p.t < q.t; });
  size_t ev_pos[2] = {0, 0};
  cd jump_level[2] = {0.0, 0.0};

  // Fhat(l, j): desingularized field leaving leg l at node j (zero for j <= 0).
  std::vector<Scalar> F(size_t(L) * size_t(n_steps + 1), Scalar(0));
  auto Fat = [&](int l, int j) -> Scalar { return j <= 0 ? Scalar(0) : F[size_t(l) * (n_steps + 1) + j]; };

  std::vector<cd> c1(n_steps + 1), c2(n_steps + 1), S2(n_steps + 1, 0.0);
  cd c[2] = {1.0, 0.0};
  c1[0] = 1.0;
  c2[0] = 0.0;
  cd S_prev[2] = {0.0, 0.0}, S_cur[2] = {0.0, 0.0};
  std::vector<Scalar> lk_val(L);
  const double one[2] = {1.0, 0.0};

  auto lookup = [&](int l, int n) -> Scalar {
    if (l == 0) return Scalar(0);
    const Lookup& lk = look[l];
    if (lk.exact) return Fat(l - 1, n - lk.exact_shift);
    const int b = n - lk.shift;
    return lk.w[0] * Fat(l - 1, b) + lk.w[1] * Fat(l - 1, b + 1) + lk.w[2] * Fat(l - 1, b + 2) +
           lk.w[3] * Fat(l - 1, b + 3);
  };

  // Early stop: once the field has left past the last leg for good, the
  // receiver can hold at most 1 - lost.
  const double t_full = legs.back().x - legs.front().x;
  cd step_sum = 0.0;
  for (const auto& l : legs)
    if (l.emitter == 0) step_sum += std::conj(cd(l.gt));
  double lost = 0.0, flux_prev = -1.0, run_max = 0.0;
  int n_done = n_steps;

  for (int n = 0; n < n_steps; ++n) {
    const double t0 = n * h, t1 = (n + 1) * h;
    cd jint[2];
    for (int q = 0; q < 2; ++q) {
      while (ev_pos[q] < events[q].size() && events[q][ev_pos[q]].t <= t0) jump_level[q] += events[q][ev_pos[q]++].mag;
      jint[q] = jump_level[q] * e1[q];
      size_t p = ev_pos[q];
      while (p < events[q].size() && events[q][p].t <= t1) {
        const double rem = t1 - events[q][p].t;
        const double f = a[q] * rem < 1e-8 ? rem : -std::expm1(-a[q] * rem) / a[q];
        jint[q] += events[q][p].mag * f;
        ++p;
      }
    }
    auto advance = [&](const cd* S_new, cd* out) {
      for (int q = 0; q < 2; ++q) out[q] = decay[q] * c[q] + w0[q] * S_cur[q] + w1[q] * S_new[q] + jint[q];
    };
    auto pass = [&](const cd* cest, cd* S_new) {
      S_new[0] = S_new[1] = 0.0;
      for (int l = 0; l < L; ++l) {
        const Scalar v = lookup(l, n + 1);
        lk_val[l] = v;
        const int q = legs[l].emitter;
        Scalar chat;
        if constexpr (std::is_floating_point_v<Scalar>) chat = (cest[q] - one[q]).real();
        else chat = cest[q] - one[q];
        F[size_t(l) * (n_steps + 1) + n + 1] = v + conj_s(legs[l].gt) * chat;
        S_new[q] += -2.0 * pi * cd(legs[l].gt) * cd(v);
      }
    };

    cd S_pred[2], c_new[2], S_new[2];
    for (int q = 0; q < 2; ++q) S_pred[q] = n == 0 ? S_cur[q] : 2.0 * S_cur[q] - S_prev[q];
    advance(S_pred, c_new);
    if (single_pass) {
      pass(c_new, S_new);
      advance(S_new, c_new);
      for (int l = 0; l < L; ++l) {
        const int q = legs[l].emitter;
        Scalar chat;
        if constexpr (std::is_floating_point_v<Scalar>) chat = (c_new[q] - one[q]).real();
        else chat = c_new[q] - one[q];
        F[size_t(l) * (n_steps + 1) + n + 1] = lk_val[l] + conj_s(legs[l].gt) * chat;
      }
    } else {
      for (int it = 0; it < 3; ++it) {
        pass(c_new, S_new);
        if (it < 2) advance(S_new, c_new);
      }
    }
    S_prev[0] = S_cur[0];
    S_prev[1] = S_cur[1];
    S_cur[0] = S_new[0];
    S_cur[1] = S_new[1];
    c[0] = c_new[0];
    c[1] = c_new[1];
    c1[n + 1] = c[0];
    c2[n + 1] = c[1];
    S2[n + 1] = S_cur[1];
    if (opts.early_stop) {
      run_max = std::max(run_max, std::norm(c[1]));
      if (t0 >= t_full) {
        const double flux = 2.0 * pi * std::norm(cd(F[size_t(L - 1) * (n_steps + 1) + n + 1]) + step_sum);
        if (flux_prev >= 0) lost += 0.5 * h * (flux_prev + flux);
        flux_prev = flux;
        // |c2(t1)|^2 <= 1 - lost, so the maximum lies strictly before t1.
        if (1.0 - lost + 1e-6 < run_max) {
          n_done = n + 1;
          break;
        }
      }
    }
  }

  DelayResult r;
  int imax = 0;
  double pmax = 0.0;
  for (int i = 0; i <= n_done; ++i)
    if (std::norm(c2[i]) > pmax) {
      pmax = std::norm(c2[i]);
      imax = i;
    }
  r.p2_max = pmax;
  r.t_star = imax * h;
  if (pmax > 0 && imax > 0 && imax < n_done) {
    // Refine on the integrator's own dense output: c2 has slope jumps at the
    // event times, which a polynomial through the nodes would smear.
    const double a2 = a[1];
    auto interp = [&](double t) {
      const int n = std::clamp(int(std::floor(t / h)), 0, n_done - 1);
      const double t0 = n * h, u = t - t0;
      const double au = a2 * u;
      double e, E1, W1;
      if (au < 1e-6) {
        e = 1.0 - au;
        E1 = u * (1 - 0.5 * au);
        W1 = u * u / h * (0.5 - au / 6.0);
      } else {
        e = std::exp(-au);
        E1 = -std::expm1(-au) / a2;
        W1 = (au - 1.0 + e) / (a2 * a2 * h);
      }
      cd v = e * c2[n] + (E1 - W1) * S2[n] + W1 * S2[n + 1];
      for (const Event& ev : events[1]) {
        if (ev.t > t) break;
        const double rem = t - std::max(ev.t, t0);
        v += ev.mag * (a2 * rem < 1e-8 ? rem : -std::expm1(-a2 * rem) / a2);
      }
      return std::norm(v);
    };
    double lo = (imax - 1) * h, hi = (imax + 1) * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = interp(x1), f2 = interp(x2);
    while (hi - lo > 1e-9) {
      if (f1 >= f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = interp(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = interp(x2);
      }
    }
    const double tm = 0.5 * (lo + hi), fm = interp(tm);
    if (fm > r.p2_max) {
      r.p2_max = fm;
      r.t_star = tm;
    }
  }
  if (opts.keep_trajectory) {
    r.times = Eigen::VectorXd::LinSpaced(n_done + 1, 0.0, n_done * h);
    r.c1 = Eigen::Map<Eigen::VectorXcd>(c1.data(), n_done + 1);
    r.c2 = Eigen::Map<Eigen::VectorXcd>(c2.data(), n_done + 1);
  }
  return r;
}

template <class Scalar>
DelayResult simulate_delay_pair(const std::vector<double>& x, const std::vector<Scalar>& gt, double d,
                                const DelayOptions& opts) {
  if (x.size() != gt.size() || x.empty()) fail(ErrorKind::InvalidConfig, "leg parameter size mismatch");
  std::vector<DelayLeg<Scalar>> legs;
  legs.reserve(2 * x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    legs.push_back({x[i], gt[i], 0});
    legs.push_back({d - x[i], conj_s(gt[i]), 1});
  }
  DelayOptions o = opts;
  if (!(o.t_max > 0)) o.t_max = d + 12.0;
  return simulate_delay(std::move(legs), o);
}

DelayResult simulate_delay(const LegSet& atom1, const LegSet& atom2, double k_q, const DelayOptions& opts) {
  std::vector<DelayLeg<cd>> legs;
  for (const auto& l : atom1.legs) legs.push_back({l.x, l.g * std::polar(1.0, k_q * l.x), 0});
  for (const auto& l : atom2.legs) legs.push_back({l.x, l.g * std::polar(1.0, k_q * l.x), 1});
  return simulate_delay(std::move(legs), opts);
}

Eigen::VectorXcd delay_pulse(const std::vector<TildeLeg>& tl, const Eigen::VectorXd& dk, const DelayOptions& opts) {
  std::vector<DelayLeg<cd>> legs;
  for (const auto& l : tl) legs.push_back({l.x, l.gt, 0});
  DelayOptions o = opts;
  o.keep_trajectory = true;
  const DelayResult r = simulate_delay(std::move(legs), o);
  const Eigen::Index n = r.times.size();
  const double h = r.times[1] - r.times[0];
  Eigen::VectorXcd xi(dk.size());
  for (Eigen::Index i = 0; i < dk.size(); ++i) {
    const double w = dk[i];
    // Integral of the piecewise-linear c1 times exp(i w s), exact per segment.
    cd s = 0.0;
    const double wh = w * h;
    cd A, B;  // weights of the left and right node
    if (std::abs(wh) < 1e-4) {
      A = h * cd(0.5, wh / 6.0);
      B = h * cd(0.5, wh / 3.0);
    } else {
      const cd e = std::polar(1.0, wh), iw(0.0, wh);
      A = h * ((e - 1.0 - iw) / (iw * iw));
      B = h * ((e * (iw - 1.0) + 1.0) / (iw * iw));
    }
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      const cd base = std::polar(1.0, w * r.times[j]);
      s += base * (A * r.c1[j] + B * r.c1[j + 1]);
    }
    cd g = 0.0;
    for (const auto& l : tl) g += l.gt * std::polar(1.0, w * l.x);
    xi[i] = cd(0.0, -1.0) * std::conj(g) * s;
  }
  return xi;
}

template DelayResult simulate_delay<double>(std::vector<DelayLeg<double>>, const DelayOptions&);
template DelayResult simulate_delay<cd>(std::vector<DelayLeg<cd>>, const DelayOptions&);
template DelayResult simulate_delay_pair<double>(const std::vector<double>&, const std::vector<double>&, double,
                                                 const DelayOptions&);
template DelayResult simulate_delay_pair<cd>(const std::vector<double>&, const std::vector<cd>&, double,
                                             const DelayOptions&);

}  // namespace gat
