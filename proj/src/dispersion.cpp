#include "gat/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gat/errors.hpp"

namespace gat {

namespace {
constexpr double pi = std::numbers::pi;
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sgn(double x) { return (x > 0) - (x < 0); }
}  // namespace

Dispersion::Dispersion(Variant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const LinearChiral& d) {
                   if (!(d.v_g > 0)) fail(ErrorKind::InvalidConfig, "v_g must be positive");
                 },
                 [](const LinearBidirectional& d) {
                   if (!(d.v_g > 0)) fail(ErrorKind::InvalidConfig, "v_g must be positive");
                 },
                 [](const Sinusoidal& d) {
                   if (!(d.v_g > 0) || !(d.W > 0) || !(d.omega_q > 0))
                     fail(ErrorKind::InvalidConfig, "sinusoidal dispersion needs W, v_g, omega_q > 0");
                 },
                 [](const CosineBand& d) {
                   if (!(d.a > 0) || d.J == 0)
                     fail(ErrorKind::InvalidConfig, "cosine band needs a > 0 and J != 0");
                 }},
             v_);
}

std::string Dispersion::name() const {
  return std::visit(overloaded{[](const LinearChiral&) { return std::string("linear-chiral"); },
                               [](const LinearBidirectional&) { return std::string("linear-bidirectional"); },
                               [](const Sinusoidal&) { return std::string("sinusoidal"); },
                               [](const CosineBand&) { return std::string("cosine-band"); }},
                    v_);
}

double Dispersion::omega(double k) const {
  return std::visit(
      overloaded{[&](const LinearChiral& d) { return d.v_g * std::abs(k); },
                 [&](const LinearBidirectional& d) { return d.v_g * std::abs(k); },
                 [&](const Sinusoidal& d) {
                   return d.omega_q + d.W * std::sin((d.v_g * std::abs(k) - d.omega_q) / d.W);
                 },
                 [&](const CosineBand& d) { return d.omega_r - 2.0 * std::abs(d.J) * std::cos(k * d.a); }},
      v_);
}

double Dispersion::detuning(double k, double omega_q) const {
  return std::visit(
      overloaded{[&](const LinearChiral& d) { return d.v_g * std::abs(k) - omega_q; },
                 [&](const LinearBidirectional& d) { return d.v_g * std::abs(k) - omega_q; },
                 [&](const Sinusoidal& d) {
                   return (d.omega_q - omega_q) + d.W * std::sin((d.v_g * std::abs(k) - d.omega_q) / d.W);
                 },
                 [&](const CosineBand& d) {
                   return (d.omega_r - omega_q) - 2.0 * std::abs(d.J) * std::cos(k * d.a);
                 }},
      v_);
}

double Dispersion::velocity(double k) const {
  return std::visit(
      overloaded{[&](const LinearChiral& d) { return d.v_g * sgn(k); },
                 [&](const LinearBidirectional& d) { return d.v_g * sgn(k); },
                 [&](const Sinusoidal& d) {
                   return sgn(k) * d.v_g * std::cos((d.v_g * std::abs(k) - d.omega_q) / d.W);
                 },
                 [&](const CosineBand& d) { return 2.0 * std::abs(d.J) * d.a * std::sin(k * d.a); }},
      v_);
}

double Dispersion::dos(double k) const {
  const double v = std::abs(velocity(k));
  return v > 0 ? 1.0 / v : std::numeric_limits<double>::infinity();
}

double Dispersion::omega_min() const {
  return std::visit(overloaded{[](const LinearChiral&) { return 0.0; },
                               [](const LinearBidirectional&) { return 0.0; },
                               [](const Sinusoidal& d) { return d.omega_q - d.W; },
                               [](const CosineBand& d) { return d.omega_r - 2.0 * std::abs(d.J); }},
                    v_);
}

double Dispersion::omega_max() const {
  return std::visit(
      overloaded{[](const LinearChiral&) { return std::numeric_limits<double>::infinity(); },
                 [](const LinearBidirectional&) { return std::numeric_limits<double>::infinity(); },
                 [](const Sinusoidal& d) { return d.omega_q + d.W; },
                 [](const CosineBand& d) { return d.omega_r + 2.0 * std::abs(d.J); }},
      v_);
}

double Dispersion::v_max() const {
  return std::visit(overloaded{[](const LinearChiral& d) { return d.v_g; },
                               [](const LinearBidirectional& d) { return d.v_g; },
                               [](const Sinusoidal& d) { return d.v_g; },
                               [](const CosineBand& d) { return 2.0 * std::abs(d.J) * d.a; }},
                    v_);
}

bool Dispersion::is_linear() const {
  return std::holds_alternative<LinearChiral>(v_) || std::holds_alternative<LinearBidirectional>(v_);
}

bool Dispersion::in_band(double k) const {
  return std::visit(overloaded{[&](const LinearChiral&) { return k >= 0; },
                               [&](const LinearBidirectional&) { return true; },
                               [&](const Sinusoidal& d) {
                                 return std::abs(d.v_g * std::abs(k) - d.omega_q) <=
                                        0.5 * pi * d.W * (1 + 1e-12);
                               },
                               [&](const CosineBand& d) { return std::abs(k) * d.a <= pi * (1 + 1e-12); }},
                    v_);
}

bool Dispersion::at_band_edge(double k) const {
  constexpr double tol = 1e-12;
  return std::visit(overloaded{[&](const LinearChiral&) { return k == 0.0; },
                               [&](const LinearBidirectional&) { return k == 0.0; },
                               [&](const Sinusoidal& d) {
                                 const double u = (d.v_g * std::abs(k) - d.omega_q) / d.W;
                                 return std::abs(std::abs(u) - 0.5 * pi) <= tol * (1 + std::abs(u));
                               },
                               [&](const CosineBand& d) {
                                 const double u = std::abs(k) * d.a;
                                 return u <= tol || std::abs(u - pi) <= tol * pi;
                               }},
                    v_);
}

double Dispersion::k_of_omega(double w) const {
  if (!(w >= omega_min() && w <= omega_max()))
    fail(ErrorKind::OutOfBand, "frequency outside the band [" + std::to_string(omega_min()) + ", " +
                                   std::to_string(omega_max()) + "]");
  return std::visit(overloaded{[&](const LinearChiral& d) { return w / d.v_g; },
                               [&](const LinearBidirectional& d) { return w / d.v_g; },
                               [&](const Sinusoidal& d) {
                                 const double s = std::clamp((w - d.omega_q) / d.W, -1.0, 1.0);
                                 return (d.omega_q + d.W * std::asin(s)) / d.v_g;
                               },
                               [&](const CosineBand& d) {
                                 const double c = std::clamp((d.omega_r - w) / (2.0 * std::abs(d.J)), -1.0, 1.0);
                                 return std::acos(c) / d.a;
                               }},
                    v_);
}

}  // namespace gat
