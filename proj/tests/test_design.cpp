#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gat/decay_law.hpp"
#include "gat/design.hpp"
#include "gat/errors.hpp"
#include "gat/mode_grid.hpp"
#include "gat/special_functions.hpp"

using namespace gat;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

// -i int_0^T c1(t) exp(i delta t) dt by composite Gauss-Legendre.
cd laplace_oracle(const DecayLaw& law, double delta, double T) {
  const auto gl = gauss_legendre(20);
  const int panels = 400;
  const double h = T / panels;
  cd s = 0.0;
  for (int p = 0; p < panels; ++p)
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double t = (p + 0.5) * h + 0.5 * h * gl.nodes[q];
      s += 0.5 * h * gl.weights[q] * law.c1(t) * std::polar(1.0, delta * t);
    }
  return cd(0.0, -1.0) * s;
}

}  // namespace

TEST_CASE("laplace transforms of the decay laws") {
  const DecayLaw ex(Exponential{2.0});
  for (double dl : {-3.0, 0.0, 0.4, 7.0}) {
    CHECK(std::abs(laplace_c1(ex, dl) - cd(0.0, -1.0) / cd(1.0, -dl)) < 1e-14);
    CHECK(inverse_laplace_imag(ex, dl) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(laplace_c1(ex, dl) - laplace_oracle(ex, dl, 60.0)) < 1e-12);
  }
  const DecayLaw ga(Gaussian{1.3});
  for (double dl : {-4.0, -0.5, 0.0, 1.0, 6.0}) {
    const cd ref = laplace_oracle(ga, dl, 12.0);
    CHECK(std::abs(laplace_c1(ga, dl) - ref) < 1e-12);
    CHECK(inverse_laplace_imag(ga, dl) == doctest::Approx((1.0 / ref).imag()).epsilon(1e-9));
  }
  // Far tail keeps relative accuracy: Im{1/c~1} ~ exp(-dl^2 tau^2 / 4) is not lost to cancellation.
  const double far = inverse_laplace_imag(ga, 20.0);
  CHECK(far > 0.0);
  CHECK(far < 1e-40);
}

TEST_CASE("tabulated law reproduces the exponential") {
  const int n = 4001;
  Tabulated tab{Eigen::VectorXd::LinSpaced(n, 0.0, 40.0), Eigen::VectorXcd(n)};
  for (int i = 0; i < n; ++i) tab.c1[i] = std::exp(-tab.t[i]);
  const DecayLaw law(tab);
  CHECK(std::abs(law.c1(1.2345) - std::exp(-1.2345)) < 5e-9);
  for (double dl : {-2.0, 0.0, 1.5})
    CHECK(std::abs(laplace_c1(law, dl) - cd(0.0, -1.0) / cd(1.0, -dl)) < 1e-6);
}

TEST_CASE("unphysical decay is rejected") {
  // Oscillating c1: Im{1/c~1} < 0 near resonance.
  const int n = 3001;
  Tabulated tab{Eigen::VectorXd::LinSpaced(n, 0.0, 60.0), Eigen::VectorXcd(n)};
  for (int i = 0; i < n; ++i) tab.c1[i] = std::cos(3.0 * tab.t[i]) * std::exp(-0.05 * tab.t[i]);
  const DecayLaw law(tab);
  CHECK_THROWS_AS(coupling_magnitude(law, Dispersion(), 50.0, 50.0), Error);
}

TEST_CASE("exponential design on a linear chiral band") {
  const DecayLaw ex(Exponential{2.0});
  const Dispersion lin;
  // |g|^2 = Im{1/c~1} v / pi = 1/pi
  CHECK(coupling_magnitude(ex, lin, 50.0, 47.0) == doctest::Approx(1.0 / std::sqrt(pi)));
  const ModeGrid grid = chiral_grid(50.0, 20.0, 801);
  const SampledCoupling g1 = design_continuum(ex, lin, 50.0, grid, 30.0, 30.0, 0.0);
  const SampledCoupling g2 = mirror_coupling(g1, 30.0);
  for (Eigen::Index i = 0; i < grid.size(); i += 97)
    CHECK(std::abs(g2.g[i] - std::polar(1.0, grid.k[i] * 30.0) * std::conj(g1.g[i])) < 1e-14);
  // The emitted pulse is time-reversal symmetric up to the propagation phase.
  const Eigen::VectorXcd xi = emitted_pulse_continuum(ex, g1);
  for (Eigen::Index i = 0; i < grid.size(); i += 53) {
    const cd demod = xi[i] * std::polar(1.0, 0.5 * (grid.k[i] * 30.0 - std::abs(grid.k[i]) * 30.0));
    CHECK(std::abs(demod.imag()) < 1e-12 * std::max(1.0, std::abs(demod)));
  }
  CHECK_THROWS_AS(design_continuum(ex, lin, 50.0, grid, 30.0, 29.0, 0.0), Error);
  CHECK_THROWS_AS(design_continuum(ex, lin, 50.0, grid, 30.0, 30.0, 0.5), Error);
}

TEST_CASE("spatial profile of the exponential design against the Bessel closed form") {
  const DecayLaw ex(Exponential{2.0});
  const double wq = 1e4 / pi;
  const ModeGrid grid = chiral_grid(wq, 2400.0, 48001);
  const SampledCoupling g = design_continuum(ex, Dispersion(), wq, grid, 0.0, 0.0, 0.0);
  const SpatialProfile p = spatial_profile(g, -6.0, 6.0, 241, {false, 600.0});
  for (Eigen::Index i = 0; i < p.x.size(); ++i) {
    const double x = p.x[i];
    if (std::abs(x) < 0.1 || std::abs(x) > 3.0) continue;
    const double s = x > 0 ? 1.0 : -1.0;
    const cd ref = cd(0.0, -1.0) / std::pow(pi, 1.5) * (bessel_k0(std::abs(x)) + s * bessel_k1(std::abs(x)));
    CHECK(std::abs(p.g[i] - ref) < 1e-3 * std::abs(ref));
  }
}

TEST_CASE("sinusoidal band magnitude carries the density of states") {
  const DecayLaw ex(Exponential{2.0});
  const Dispersion s(Sinusoidal{50.0, 2.0, 1.0});
  for (double k : {49.0, 50.0, 51.5}) {
    const double v = std::abs(s.velocity(k));
    const double im = inverse_laplace_imag(ex, s.detuning(k, 50.0));
    CHECK(coupling_magnitude(ex, s, 50.0, k) == doctest::Approx(std::sqrt(im * v / pi)));
  }
  CHECK_THROWS_AS(coupling_magnitude(ex, s, 50.0, 54.0), Error);
  CHECK_THROWS_AS(coupling_phase(ex, s, 50.0, 50.0, 30.0, 29.0), Error);
}

TEST_CASE("cosine-band chiral filter: sampled and leg forms agree") {
  const CosineBand band{50.0, 5.0, 0.1};
  const Dispersion disp(band);
  const double kq = disp.k_of_omega(50.0);
  LegSet legs = canonicalize({{0.0, {0.4, 0.1}}, {0.7, {0.2, -0.3}}, {1.3, {0.1, 0.0}}}, band.a);
  const LegSet filt = cca_chiral_filter(legs, band, 50.0);
  SampledCoupling sc;
  sc.grid = uniform_grid(-pi / band.a, pi / band.a, 257);
  sc.g = g_of_k(legs, sc.grid.k);
  sc.k_q = kq;
  const SampledCoupling sf = cca_chiral_filter(sc, band, 50.0);
  for (Eigen::Index i = 0; i < sc.grid.size(); ++i) CHECK(std::abs(sf.g[i] - g_of_k(filt, sc.grid.k[i])) < 1e-10);
  CHECK(std::abs(g_of_k(filt, -kq)) < 1e-10);
  CHECK(std::abs(g_of_k(filt, kq) - g_of_k(legs, kq)) < 1e-10);
  // k_q a = pi/2 is regular; k_q a -> pi is singular
  CHECK_THROWS_AS(cca_chiral_filter(legs, band, 60.0), Error);
}
