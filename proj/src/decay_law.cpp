#include "gat/decay_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gat/errors.hpp"
#include "gat/special_functions.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using cd = std::complex<double>;

// Nodal derivatives for the Hermite interpolant: three-point formula on a
// nonuniform grid, one-sided at the ends.
Eigen::VectorXcd nodal_slopes(const Eigen::VectorXd& t, const Eigen::VectorXcd& c) {
  const Eigen::Index n = t.size();
  Eigen::VectorXcd d(n);
  if (n == 2) {
    d.setConstant((c[1] - c[0]) / (t[1] - t[0]));
    return d;
  }
  auto three = [&](Eigen::Index i0, Eigen::Index i1, Eigen::Index i2, double x) {
    const double x0 = t[i0], x1 = t[i1], x2 = t[i2];
    return c[i0] * ((2 * x - x1 - x2) / ((x0 - x1) * (x0 - x2))) +
           c[i1] * ((2 * x - x0 - x2) / ((x1 - x0) * (x1 - x2))) +
           c[i2] * ((2 * x - x0 - x1) / ((x2 - x0) * (x2 - x1)));
  };
  d[0] = three(0, 1, 2, t[0]);
  for (Eigen::Index i = 1; i + 1 < n; ++i) d[i] = three(i - 1, i, i + 1, t[i]);
  d[n - 1] = three(n - 3, n - 2, n - 1, t[n - 1]);
  return d;
}

cd hermite(double x0, double x1, cd y0, cd y1, cd d0, cd d1, double x) {
  const double h = x1 - x0;
  const double s = (x - x0) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
}

void validate_tabulated(const Tabulated& tab) {
  const Eigen::Index n = tab.t.size();
  if (n < 3 || tab.c1.size() != n)
    fail(ErrorKind::InvalidConfig, "tabulated decay needs at least 3 matching samples");
  if (tab.t[0] != 0.0) fail(ErrorKind::InvalidConfig, "tabulated decay must start at t = 0");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(tab.t[i] > tab.t[i - 1])) fail(ErrorKind::InvalidConfig, "tabulated times must increase");
  if (std::abs(tab.c1[0] - 1.0) > 1e-12) fail(ErrorKind::InvalidConfig, "tabulated decay needs c1(0) = 1");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(std::abs(tab.c1[i]) <= 1.0 + 1e-12))
      fail(ErrorKind::InvalidConfig, "tabulated decay has |c1| > 1 at sample " + std::to_string(i));
}

cd laplace_tabulated(const Tabulated& tab, double delta) {
  const Eigen::Index n = tab.t.size();
  const cd tail_c = tab.c1[n - 1];
  if (std::abs(tail_c) > 1e-3)
    fail(ErrorKind::NonConvergentTransform,
         "|c1(t_max)| = " + std::to_string(std::abs(tail_c)) + " exceeds 1e-3");
  const Eigen::VectorXcd d = nodal_slopes(tab.t, tab.c1);
  static const GaussLegendre gl = gauss_legendre(8);
  cd sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double a = tab.t[i], b = tab.t[i + 1];
    // Subdivide intervals where the carrier oscillates quickly.
    const int sub = std::max(1, int(std::ceil(std::abs(delta) * (b - a) / 2.0)));
    for (int s = 0; s < sub; ++s) {
      const double lo = a + (b - a) * s / sub, hi = a + (b - a) * (s + 1) / sub;
      const double h2 = 0.5 * (hi - lo), m2 = 0.5 * (hi + lo);
      for (size_t q = 0; q < gl.nodes.size(); ++q) {
        const double x = m2 + h2 * gl.nodes[q];
        sum += gl.weights[q] * h2 * hermite(a, b, tab.c1[i], tab.c1[i + 1], d[i], d[i + 1], x) *
               std::polar(1.0, delta * x);
      }
    }
  }
  // Exponential tail beyond t_max fitted to the last two samples.
  if (std::abs(tail_c) > 0 && std::abs(tab.c1[n - 2]) > 0) {
    const double h = tab.t[n - 1] - tab.t[n - 2];
    const cd kappa = -std::log(tab.c1[n - 1] / tab.c1[n - 2]) / h;
    if (kappa.real() > 0) {
      sum += tail_c * std::polar(1.0, delta * tab.t[n - 1]) / (kappa - cd(0.0, delta));
    } else {
      warn("tabulated decay tail is not decaying; tail contribution dropped");
    }
  }
  return cd(0.0, -1.0) * sum;
}

}  // namespace

DecayLaw::DecayLaw(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{[](const Exponential& e) {
                          if (!(e.gamma > 0)) fail(ErrorKind::InvalidConfig, "gamma must be positive");
                        },
                        [](const Gaussian& g) {
                          if (!(g.tau > 0)) fail(ErrorKind::InvalidConfig, "Gaussian tau must be positive");
                        },
                        [](const Tabulated& tab) { validate_tabulated(tab); }},
             v_);
}

std::string DecayLaw::name() const {
  return std::visit(overloaded{[](const Exponential&) { return std::string("exponential"); },
                               [](const Gaussian&) { return std::string("gaussian"); },
                               [](const Tabulated&) { return std::string("tabulated"); }},
                    v_);
}

cd DecayLaw::c1(double t) const {
  if (t < 0) return 0.0;
  return std::visit(overloaded{[&](const Exponential& e) { return cd(std::exp(-0.5 * e.gamma * t)); },
                               [&](const Gaussian& g) { return cd(std::exp(-t * t / (g.tau * g.tau))); },
                               [&](const Tabulated& tab) {
                                 const Eigen::Index n = tab.t.size();
                                 if (t >= tab.t[n - 1]) return cd(tab.c1[n - 1]);
                                 const auto* it = std::upper_bound(tab.t.data(), tab.t.data() + n, t);
                                 const Eigen::Index i = Eigen::Index(it - tab.t.data()) - 1;
                                 const Eigen::VectorXcd d = nodal_slopes(tab.t, tab.c1);
                                 return hermite(tab.t[i], tab.t[i + 1], tab.c1[i], tab.c1[i + 1], d[i], d[i + 1], t);
                               }},
                    v_);
}

cd laplace_c1(const DecayLaw& decay, double delta) {
  return std::visit(overloaded{[&](const Exponential& e) { return 1.0 / cd(delta, 0.5 * e.gamma); },
                               [&](const Gaussian& g) {
                                 return cd(0.0, -0.5 * g.tau * std::sqrt(pi)) * faddeeva_real(0.5 * delta * g.tau);
                               },
                               [&](const Tabulated& tab) { return laplace_tabulated(tab, delta); }},
                    decay.variant());
}

double inverse_laplace_imag(const DecayLaw& decay, double delta) {
  if (const auto* e = std::get_if<Exponential>(&decay.variant())) return 0.5 * e->gamma;
  const cd c = laplace_c1(decay, delta);
  const double n2 = std::norm(c);
  if (n2 == 0.0) fail(ErrorKind::UnphysicalDecay, "c~1 vanishes; coupling undefined");
  return -c.imag() / n2;
}

}  // namespace gat
