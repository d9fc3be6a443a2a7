#include "gat/legs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gat/errors.hpp"
#include "gat/special_functions.hpp"

namespace gat {

namespace {
constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;
}  // namespace

Eigen::VectorXd LegSet::positions() const {
  Eigen::VectorXd x(Eigen::Index(legs.size()));
  for (size_t i = 0; i < legs.size(); ++i) x[Eigen::Index(i)] = legs[i].x;
  return x;
}

Eigen::VectorXcd LegSet::strengths() const {
  Eigen::VectorXcd g(Eigen::Index(legs.size()));
  for (size_t i = 0; i < legs.size(); ++i) g[Eigen::Index(i)] = legs[i].g;
  return g;
}

double LegSet::total_rate(double v_g) const {
  double s = 0.0;
  for (const auto& l : legs) s += std::norm(l.g);
  return pi * s / v_g;
}

LegSet canonicalize(std::vector<Leg> legs, double lambda_q) {
  if (legs.empty()) fail(ErrorKind::InvalidConfig, "empty leg list");
  for (const auto& l : legs)
    if (!std::isfinite(l.x) || !std::isfinite(l.g.real()) || !std::isfinite(l.g.imag()))
      fail(ErrorKind::InvalidConfig, "leg with non-finite position or strength");
  std::stable_sort(legs.begin(), legs.end(), [](const Leg& a, const Leg& b) { return a.x < b.x; });
  const double tol = 1e-12 * lambda_q;
  LegSet out;
  size_t i = 0;
  while (i < legs.size()) {
    Leg merged = legs[i];
    size_t j = i + 1;
    while (j < legs.size() && legs[j].x - legs[i].x <= tol) merged.g += legs[j++].g;
    if (j - i == 1 || merged.g != cd(0.0)) out.legs.push_back(merged);
    i = j;
  }
  if (out.legs.empty()) fail(ErrorKind::InvalidConfig, "merged legs cancel to an empty set");
  return out;
}

LegSet GiantAtomPair::atom2() const {
  LegSet out;
  out.legs.reserve(atom1.size());
  for (auto it = atom1.legs.rbegin(); it != atom1.legs.rend(); ++it)
    out.legs.push_back({d - it->x, std::conj(it->g)});
  return out;
}

bool GiantAtomPair::serial() const { return atom1.legs.back().x < 0.5 * d; }

cd g_of_k(const LegSet& legs, double k) {
  cd s = 0.0;
  for (const auto& l : legs.legs) s += l.g * std::polar(1.0, k * l.x);
  return s;
}

Eigen::VectorXcd g_of_k(const LegSet& legs, const Eigen::VectorXd& k) {
  Eigen::VectorXcd out(k.size());
  for (Eigen::Index i = 0; i < k.size(); ++i) out[i] = g_of_k(legs, k[i]);
  return out;
}

LegSet sample_legs(const SpatialProfile& profile, int n, double x_lo, double x_hi, double lambda_q) {
  const Eigen::Index m = profile.x.size();
  if (n < 1) fail(ErrorKind::InvalidConfig, "sample_legs needs n >= 1");
  if (m < 4 || profile.g.size() != m) fail(ErrorKind::InvalidConfig, "profile needs at least 4 samples");
  if (!(x_hi > x_lo) || x_lo < profile.x[0] || x_hi > profile.x[m - 1])
    fail(ErrorKind::InvalidConfig, "sampling window outside the profile domain");
  const double h = (profile.x[m - 1] - profile.x[0]) / double(m - 1);
  const double dx = (x_hi - x_lo) / n;
  std::vector<Leg> legs;
  for (int i = 0; i < n; ++i) {
    const double x = x_lo + (i + 0.5) * dx;
    // Four-point Lagrange interpolation of the demodulated envelope.
    Eigen::Index j = Eigen::Index(std::floor((x - profile.x[0]) / h));
    j = std::clamp<Eigen::Index>(j - 1, 0, m - 4);
    cd val = 0.0;
    for (Eigen::Index a = j; a < j + 4; ++a) {
      double w = 1.0;
      for (Eigen::Index b = j; b < j + 4; ++b)
        if (b != a) w *= (x - profile.x[b]) / (profile.x[a] - profile.x[b]);
      val += w * profile.g[a] * std::polar(1.0, profile.carrier_k * profile.x[a]);
    }
    val *= std::polar(1.0, -profile.carrier_k * x);
    legs.push_back({x, dx * val});
  }
  return canonicalize(std::move(legs), lambda_q);
}

LegSet realify_legs(const LegSet& legs, double k_q) {
  if (!(k_q > 0)) fail(ErrorKind::InvalidConfig, "realify_legs needs k_q > 0");
  std::vector<Leg> out;
  out.reserve(legs.size());
  for (const auto& l : legs.legs) {
    const double phase = (l.g == cd(0.0)) ? 0.0 : std::arg(l.g);
    out.push_back({l.x + phase / k_q, cd(std::abs(l.g), 0.0)});
  }
  return canonicalize(std::move(out), 2 * pi / k_q);
}

LegSet double_legs_chiral(const LegSet& legs, double lambda_q) {
  for (size_t i = 1; i < legs.size(); ++i)
    if (legs[i].x - legs[i - 1].x < lambda_q)
      warn("leg spacing below lambda_q; chirality doubling companions may overlap");
  // Companion a quarter wavelength upstream with a +pi/2 phase: the pair factor
  // (1 + i exp(-i k lambda_q/4))/2 is 1 at k_q and 0 at -k_q.
  std::vector<Leg> out;
  out.reserve(2 * legs.size());
  for (const auto& l : legs.legs) {
    out.push_back({l.x, 0.5 * l.g});
    out.push_back({l.x - 0.25 * lambda_q, cd(0.0, 0.5) * l.g});
  }
  return canonicalize(std::move(out), lambda_q);
}

std::vector<TildeLeg> reparametrize_tilde(const LegSet& legs, double k_q) {
  std::vector<TildeLeg> out;
  out.reserve(legs.size());
  for (const auto& l : legs.legs) out.push_back({l.x, l.g * std::polar(1.0, k_q * l.x)});
  return out;
}

LegSet from_tilde(const std::vector<TildeLeg>& legs, double k_q) {
  LegSet out;
  out.legs.reserve(legs.size());
  for (const auto& l : legs) out.legs.push_back({l.x, l.gt * std::polar(1.0, -k_q * l.x)});
  return out;
}

cd self_energy_tilde(const std::vector<TildeLeg>& legs, double dk, double v_g) {
  // Legs are position-sorted, so the Theta_{1/2} double sum is a prefix sum.
  cd diag = 0.0, cross = 0.0, prefix = 0.0;
  for (const auto& l : legs) {
    const cd e = std::polar(1.0, dk * l.x);
    const cd b = l.gt * e;
    cross += b * prefix;
    prefix += std::conj(b);
    diag += std::norm(l.gt);
  }
  return cd(0.0, -2.0 * pi / v_g) * (0.5 * diag + cross);
}

cd pulse_tilde(const std::vector<TildeLeg>& legs, double dk, double v_g) {
  cd num = 0.0;
  for (const auto& l : legs) num += std::conj(l.gt) * std::polar(1.0, -dk * l.x);
  return num / (v_g * dk - self_energy_tilde(legs, dk, v_g));
}

namespace {
void require_linear_chiral(const Dispersion& disp) {
  if (!std::holds_alternative<LinearChiral>(disp.variant()))
    fail(ErrorKind::UnsupportedDispersion, "closed-form self energy needs linear chiral dispersion");
}
}  // namespace

cd self_energy_discrete(const LegSet& legs, double omega, const Dispersion& disp) {
  require_linear_chiral(disp);
  const double v = std::get<LinearChiral>(disp.variant()).v_g;
  const double k = omega / v;
  cd diag = 0.0, cross = 0.0, prefix = 0.0;
  for (const auto& l : legs.legs) {
    const cd b = l.g * std::polar(1.0, k * l.x);
    cross += b * prefix;
    prefix += std::conj(b);
    diag += std::norm(l.g);
  }
  return cd(0.0, -2.0 * pi / v) * (0.5 * diag + cross);
}

cd pulse_from_legs(const LegSet& legs, double k, const Dispersion& disp, double omega_q) {
  require_linear_chiral(disp);
  const double v = std::get<LinearChiral>(disp.variant()).v_g;
  const double w = v * k;
  return std::conj(g_of_k(legs, k)) / (w - omega_q - self_energy_discrete(legs, w, disp));
}

double pulse_norm(const std::vector<TildeLeg>& legs, double v_g, bool check) {
  double x_span = 0.0, g0 = 0.0;
  for (const auto& l : legs) {
    x_span = std::max(x_span, std::abs(l.x - legs.front().x));
    g0 += std::norm(l.gt);
  }
  // Panels resolve the fastest interference period 2 pi / x_span and the
  // Lorentzian core; beyond L the mean of |g|^2 / (v dk)^2 is integrated exactly.
  const double L = 2000.0;
  const double width = std::min(0.5, 2.0 * pi / std::max(x_span, 1e-9) / 4.0);
  static const GaussLegendre gl = gauss_legendre(8);
  const long panels = long(std::ceil(2.0 * L / width));
  const double w = 2.0 * L / double(panels);
  double sum = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double mid = -L + (p + 0.5) * w;
    for (size_t q = 0; q < gl.nodes.size(); ++q)
      sum += gl.weights[q] * 0.5 * w * std::norm(pulse_tilde(legs, mid + 0.5 * w * gl.nodes[q], v_g));
  }
  sum += 2.0 * g0 / (v_g * v_g * L);
  if (check && sum < 1.0 - 1e-4)
    fail(ErrorKind::IncompleteEmission, "emitted pulse norm " + std::to_string(sum) + " < 1 - 1e-4");
  return sum;
}

}  // namespace gat
