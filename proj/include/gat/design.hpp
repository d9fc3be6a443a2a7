#pragma once

#include <complex>

#include <Eigen/Dense>

#include "gat/coupling.hpp"
#include "gat/decay_law.hpp"
#include "gat/dispersion.hpp"
#include "gat/legs.hpp"
#include "gat/mode_grid.hpp"

namespace gat {

// |g(k)| = sqrt(Im{1/c~1(Delta(k))} / (pi rho(k))), times sqrt(2) on a band edge.
double coupling_magnitude(const DecayLaw& decay, const Dispersion& disp, double omega_q, double k);

// arg c~1(Delta(k)) + [k d - omega(k) T] / 2
double coupling_phase(const DecayLaw& decay, const Dispersion& disp, double omega_q, double k, double d,
                      double T);

SampledCoupling design_continuum(const DecayLaw& decay, const Dispersion& disp, double omega_q,
                                 const ModeGrid& grid, double d, double T, double eps);

// Mirrored receiver coupling g2(k) = exp(i k d) conj(g1(k)).
SampledCoupling mirror_coupling(const SampledCoupling& g1, double d);

struct ProfileOptions {
  // Keep the exp(-i k_q x) carrier in the output (otherwise demodulated).
  bool include_carrier = true;
  // Width of an optional Gaussian taper exp(-((k - k_q)/taper)^2); 0 disables.
  double taper = 0.0;
};

// g(x) = (1/2pi) int dk exp(-ikx) g(k) by direct summation on the grid.
SpatialProfile spatial_profile(const SampledCoupling& coupling, double x_lo, double x_hi, Eigen::Index n,
                               const ProfileOptions& opts = {});

// xi(k) = conj(g(k)) c~1(Delta(k)); the decay/dispersion come from the descriptor.
Eigen::VectorXcd emitted_pulse_continuum(const DecayLaw& decay, const SampledCoupling& coupling);
Eigen::VectorXcd emitted_pulse_continuum(const DecayLaw& decay, const SampledCoupling& coupling,
                                         const Dispersion& disp, double omega_q);

// Removes the coupling to -k_q on a cosine band:
// G(k) = g(k) (1 - exp(i(k + k_q)a)) / (1 - exp(2 i k_q a)).
SampledCoupling cca_chiral_filter(const SampledCoupling& coupling, const CosineBand& band, double omega_q);
LegSet cca_chiral_filter(const LegSet& legs, const CosineBand& band, double omega_q);

}  // namespace gat
