#pragma once

#include <numbers>

namespace gat {

// Physical scales. Everything inside the library runs with v_g = tau = 1, so a
// Units value is only needed when converting data in and out.
struct Units {
  double v_g = 1.0;
  double tau = 1.0;
  double omega_q = 50.0;

  Units() = default;
  Units(double v_g, double tau, double omega_q);

  double k_q() const { return omega_q / v_g; }
  double lambda_q() const { return 2.0 * std::numbers::pi / k_q(); }
  double omega_q_tau() const { return omega_q * tau; }
  double length() const { return v_g * tau; }
  // Unit of the leg strength g: sqrt(v_g / tau).
  double strength() const;

  static Units desk();
  static Units paper_scale();
};

// Throws InvalidConfig for non-positive scales or omega_q*tau < 10, warns below 50.
void validate(const Units& u);

}  // namespace gat
