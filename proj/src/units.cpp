#include "gat/units.hpp"

#include <cmath>
#include <string>

#include "gat/errors.hpp"

namespace gat {

Units::Units(double v_g_, double tau_, double omega_q_) : v_g(v_g_), tau(tau_), omega_q(omega_q_) {
  validate(*this);
}

double Units::strength() const { return std::sqrt(v_g / tau); }

Units Units::desk() { return Units(1.0, 1.0, 50.0); }

Units Units::paper_scale() { return Units(1.0, 1.0, 1e4 / std::numbers::pi); }

void validate(const Units& u) {
  if (!(u.v_g > 0) || !(u.tau > 0) || !(u.omega_q > 0) || !std::isfinite(u.v_g) ||
      !std::isfinite(u.tau) || !std::isfinite(u.omega_q))
    fail(ErrorKind::InvalidConfig, "v_g, tau and omega_q must be positive and finite");
  const double wt = u.omega_q * u.tau;
  if (wt < 10.0)
    fail(ErrorKind::InvalidConfig, "omega_q*tau = " + std::to_string(wt) + " < 10");
  if (wt < 50.0) warn("omega_q*tau = " + std::to_string(wt) + " is below 50");
}

}  // namespace gat
