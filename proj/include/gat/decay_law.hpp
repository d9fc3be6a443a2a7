#pragma once

#include <complex>
#include <variant>

#include <Eigen/Dense>

namespace gat {

// c1(t) = exp(-gamma t / 2)
struct Exponential {
  double gamma = 2.0;
};

// c1(t) = exp(-t^2 / tau^2)
struct Gaussian {
  double tau = 1.0;
};

// Sampled c1(t) on increasing times starting at t = 0, interpolated by cubic
// Hermite segments.
struct Tabulated {
  Eigen::VectorXd t;
  Eigen::VectorXcd c1;
};

class DecayLaw {
 public:
  using Variant = std::variant<Exponential, Gaussian, Tabulated>;

  DecayLaw() : v_(Exponential{}) {}
  DecayLaw(Variant v);

  const Variant& variant() const { return v_; }
  std::string name() const;

  std::complex<double> c1(double t) const;

 private:
  Variant v_;
};

// c~1(delta) = -i int_0^inf c1(t) exp(i delta t) dt
std::complex<double> laplace_c1(const DecayLaw& decay, double delta);

// Im{1 / c~1(delta)}, evaluated so that exponentially small values keep their
// relative accuracy for the closed forms.
double inverse_laplace_imag(const DecayLaw& decay, double delta);

}  // namespace gat
