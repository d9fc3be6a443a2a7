#include "gat/design.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gat/errors.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
using cd = std::complex<double>;

void require_in_band(const Dispersion& disp, double omega_q, double k) {
  if (!(omega_q >= disp.omega_min() && omega_q <= disp.omega_max()))
    fail(ErrorKind::OutOfBand, "omega_q outside the band of " + disp.name());
  if (!disp.in_band(k)) fail(ErrorKind::OutOfBand, "k = " + std::to_string(k) + " outside the band");
}

double resonant_k(const Dispersion& disp, double omega_q) { return disp.k_of_omega(omega_q); }

}  // namespace

double coupling_magnitude(const DecayLaw& decay, const Dispersion& disp, double omega_q, double k) {
  require_in_band(disp, omega_q, k);
  const double delta = disp.detuning(k, omega_q);
  double im = inverse_laplace_imag(decay, delta);
  if (im < 0) {
    const double scale = std::abs(1.0 / laplace_c1(decay, delta));
    if (im < -1e-9 * scale)
      fail(ErrorKind::UnphysicalDecay, "Im{1/c~1} = " + std::to_string(im) + " < 0 at Delta = " +
                                           std::to_string(delta));
    im = 0.0;
  }
  const double speed = std::abs(disp.velocity(k));
  double mag = std::sqrt(im * speed / pi);
  if (disp.at_band_edge(k)) mag *= std::sqrt(2.0);
  return mag;
}

double coupling_phase(const DecayLaw& decay, const Dispersion& disp, double omega_q, double k, double d,
                      double T) {
  require_in_band(disp, omega_q, k);
  if (T < d / disp.v_max() * (1.0 - 1e-12))
    fail(ErrorKind::CausalityViolation,
         "T = " + std::to_string(T) + " below d/v_max = " + std::to_string(d / disp.v_max()));
  const double delta = disp.detuning(k, omega_q);
  const double arg = std::arg(laplace_c1(decay, delta));
  double chirp;
  if (disp.is_linear()) {
    const double v = disp.v_max();
    chirp = 0.5 * (k * d - v * std::abs(k) * T);
  } else {
    // Split around resonance to keep the large k_q d and omega_q T terms apart.
    const double kq = resonant_k(disp, omega_q);
    chirp = 0.5 * ((k - kq) * d - delta * T) + 0.5 * (kq * d - omega_q * T);
  }
  return arg + chirp;
}

SampledCoupling design_continuum(const DecayLaw& decay, const Dispersion& disp, double omega_q,
                                 const ModeGrid& grid, double d, double T, double eps) {
  validate(grid);
  if (!(eps >= 0) || eps > 0.1) fail(ErrorKind::InvalidConfig, "regularizer eps must lie in [0, tau/10]");
  const double kq = resonant_k(disp, omega_q);
  const double v = disp.v_max();
  SampledCoupling out;
  out.grid = grid;
  out.regularizer_eps = eps;
  out.k_q = kq;
  out.g.resize(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double k = grid.k[i];
    const double mag = coupling_magnitude(decay, disp, omega_q, k);
    const double phi = coupling_phase(decay, disp, omega_q, k, d, T);
    out.g[i] = std::polar(mag, phi);
    if (eps > 0) out.g[i] *= std::exp(-eps * v * std::abs(k - kq));
  }
  out.descriptor = DesignDescriptor{decay, disp, omega_q, d, T};
  return out;
}

SampledCoupling mirror_coupling(const SampledCoupling& g1, double d) {
  SampledCoupling out = g1;
  for (Eigen::Index i = 0; i < g1.grid.size(); ++i)
    out.g[i] = std::polar(1.0, g1.grid.k[i] * d) * std::conj(g1.g[i]);
  return out;
}

SpatialProfile spatial_profile(const SampledCoupling& coupling, double x_lo, double x_hi, Eigen::Index n,
                               const ProfileOptions& opts) {
  const ModeGrid& grid = coupling.grid;
  if (n < 2 || !(x_hi > x_lo)) fail(ErrorKind::InvalidConfig, "profile window needs n >= 2 and x_hi > x_lo");
  const double dx = (x_hi - x_lo) / double(n - 1);
  const double kc = coupling.k_q;
  if (opts.include_carrier && kc > 0 && dx > (2 * pi / kc) / 8.0)
    fail(ErrorKind::ResolutionError, "profile spacing " + std::to_string(dx) +
                                         " resolves the carrier with fewer than 8 points per wavelength");
  if (x_hi - x_lo < 10.0) fail(ErrorKind::ResolutionError, "profile window spans less than 10 v_g tau");

  // Sum over k - kc so the phases stay small; the carrier is applied afterwards.
  Eigen::VectorXcd w(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    double t = 1.0;
    if (opts.taper > 0) {
      const double u = (grid.k[j] - kc) / opts.taper;
      t = std::exp(-u * u);
    }
    w[j] = coupling.g[j] * t * (grid.dk / (2 * pi));
  }
  SpatialProfile out;
  out.x.resize(n);
  out.g.resize(n);
  out.carrier_k = opts.include_carrier ? kc : 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = x_lo + double(i) * dx;
    out.x[i] = x;
    cd s = 0.0;
    for (Eigen::Index j = 0; j < grid.size(); ++j) s += w[j] * std::polar(1.0, -(grid.k[j] - kc) * x);
    out.g[i] = opts.include_carrier ? s * std::polar(1.0, -kc * x) : s;
  }
  return out;
}

Eigen::VectorXcd emitted_pulse_continuum(const DecayLaw& decay, const SampledCoupling& coupling,
                                         const Dispersion& disp, double omega_q) {
  Eigen::VectorXcd xi(coupling.grid.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double delta = disp.detuning(coupling.grid.k[i], omega_q);
    xi[i] = std::conj(coupling.g[i]) * laplace_c1(decay, delta);
  }
  return xi;
}

Eigen::VectorXcd emitted_pulse_continuum(const DecayLaw& decay, const SampledCoupling& coupling) {
  if (!coupling.descriptor)
    fail(ErrorKind::InvalidConfig, "coupling has no descriptor; pass the dispersion explicitly");
  return emitted_pulse_continuum(decay, coupling, coupling.descriptor->disp, coupling.descriptor->omega_q);
}

namespace {

struct FilterFactors {
  double kq;
  cd den;
};

FilterFactors filter_factors(const CosineBand& band, double omega_q) {
  const Dispersion disp(band);
  const double kq = disp.k_of_omega(omega_q);
  const cd den = 1.0 - std::polar(1.0, 2.0 * kq * band.a);
  if (std::abs(den) < 1e-8) fail(ErrorKind::FilterSingular, "1 - exp(2 i k_q a) vanishes");
  return {kq, den};
}

}  // namespace

SampledCoupling cca_chiral_filter(const SampledCoupling& coupling, const CosineBand& band, double omega_q) {
  const auto [kq, den] = filter_factors(band, omega_q);
  SampledCoupling out = coupling;
  for (Eigen::Index i = 0; i < coupling.grid.size(); ++i)
    out.g[i] = coupling.g[i] * (1.0 - std::polar(1.0, (coupling.grid.k[i] + kq) * band.a)) / den;
  return out;
}

LegSet cca_chiral_filter(const LegSet& legs, const CosineBand& band, double omega_q) {
  const auto [kq, den] = filter_factors(band, omega_q);
  const cd shift = std::polar(1.0, kq * band.a);
  std::vector<Leg> out;
  out.reserve(2 * legs.size());
  for (const auto& l : legs.legs) {
    out.push_back({l.x, l.g / den});
    out.push_back({l.x + band.a, -shift * l.g / den});
  }
  // Site merging tolerance relative to the lattice constant.
  return canonicalize(std::move(out), band.a);
}

}  // namespace gat
