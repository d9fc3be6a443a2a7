#pragma once

#include <string>
#include <variant>

namespace gat {

struct LinearChiral {
  double v_g = 1.0;
};

struct LinearBidirectional {
  double v_g = 1.0;
};

// omega(k) = omega_q + W sin((v_g|k| - omega_q)/W); only the monotone branch
// |v_g|k| - omega_q| <= pi W/2 counts as in-band.
struct Sinusoidal {
  double omega_q = 50.0;
  double W = 1.0;
  double v_g = 1.0;
};

// omega(k) = omega_r - 2|J| cos(k a), |k| <= pi/a.
struct CosineBand {
  double omega_r = 0.0;
  double J = 1.0;
  double a = 1.0;
};

class Dispersion {
 public:
  using Variant = std::variant<LinearChiral, LinearBidirectional, Sinusoidal, CosineBand>;

  Dispersion() : v_(LinearChiral{}) {}
  Dispersion(Variant v);

  const Variant& variant() const { return v_; }
  std::string name() const;

  double omega(double k) const;
  double velocity(double k) const;
  double dos(double k) const;
  // omega(k) - omega_q, evaluated without cancellation where the form allows.
  double detuning(double k, double omega_q) const;

  double omega_min() const;
  double omega_max() const;
  double v_max() const;

  bool is_linear() const;
  bool is_chiral() const { return std::holds_alternative<LinearChiral>(v_); }
  bool in_band(double k) const;
  bool at_band_edge(double k) const;

  // Positive wavevector on the physical branch with omega(k) = omega.
  double k_of_omega(double omega) const;

 private:
  Variant v_;
};

}  // namespace gat
