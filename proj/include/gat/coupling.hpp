#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "gat/decay_law.hpp"
#include "gat/dispersion.hpp"
#include "gat/mode_grid.hpp"

namespace gat {

struct DesignDescriptor {
  DecayLaw decay;
  Dispersion disp;
  double omega_q = 0.0;
  double d = 0.0;
  double T = 0.0;
};

// Continuum coupling g(k) sampled on a mode grid.
struct SampledCoupling {
  ModeGrid grid;
  Eigen::VectorXcd g;
  double regularizer_eps = 0.0;
  double k_q = 0.0;
  std::optional<DesignDescriptor> descriptor;
};

// g(x) on a uniform x grid. carrier_k records a plane-wave factor
// exp(-i carrier_k x) contained in g, used for smooth interpolation.
struct SpatialProfile {
  Eigen::VectorXd x;
  Eigen::VectorXcd g;
  double carrier_k = 0.0;
};

}  // namespace gat
