#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gat/dynamics.hpp"
#include "gat/errors.hpp"
#include "gat/optimize.hpp"
#include "gat/studies.hpp"

using namespace gat;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

LegSet two_leg_base() {
  const std::vector<TildeLeg> t{{0.0, {0.42, 0.0}}, {1.1, {0.38, 0.0}}};
  LegSet s = from_tilde(t, 50.0);
  const double r = 1.0 / std::sqrt(s.total_rate());
  for (auto& l : s.legs) l.g *= r;
  return s;
}

}  // namespace

TEST_CASE("summary statistics") {
  const Summary s = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(s.mean == 3.0);
  CHECK(s.std == doctest::Approx(std::sqrt(2.5)));
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.q50 == 3.0);
  CHECK(s.q25 == 2.0);
  CHECK(s.q05 == doctest::Approx(1.2));
}

TEST_CASE("FNV-1a hash") {
  CHECK(config_hash("") == 0xcbf29ce484222325ull);
  CHECK(config_hash("a") == 0xaf63dc4c8601ec8cull);
  CHECK(config_hash("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("least-squares line") {
  const LinearFit f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  // y = x^2 on 0..4: slope 4, intercept -2, R^2 = 40^2 / (10 * 174)
  const LinearFit q = linear_fit({0, 1, 2, 3, 4}, {0, 1, 4, 9, 16});
  CHECK(q.slope == doctest::Approx(4.0));
  CHECK(q.intercept == doctest::Approx(-2.0));
  CHECK(q.r2 == doctest::Approx(160.0 / 174.0));
}

TEST_CASE("noiseless disorder sweep reproduces the baseline") {
  DisorderStudy st{two_leg_base(), 0.0, 5, 3};
  const StudyReport r = disorder_sweep(st, Dispersion(), 50.0, 30.0);
  CHECK(r.n_retained == 5);
  CHECK(r.n_discarded == 0);
  FidelityProblem p;
  const double base = pair_fidelity(p, reparametrize_tilde(st.base, 50.0)).first;
  for (double v : r.samples) CHECK(v == doctest::Approx(base).epsilon(1e-10));
  CHECK(r.summary.std < 1e-12);
}

TEST_CASE("disorder sweep is reproducible and counts discarded samples") {
  DisorderStudy st{two_leg_base(), 2 * pi / 50.0 / 20.0, 12, 9};
  const StudyReport a = disorder_sweep(st, Dispersion(), 50.0, 30.0);
  const StudyReport b = disorder_sweep(st, Dispersion(), 50.0, 30.0);
  CHECK(a.samples == b.samples);
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.summary.mean >= a.summary.min);
  CHECK(a.summary.mean <= a.summary.max);
  DisorderStudy wild{two_leg_base(), 20.0, 20, 9};
  const StudyReport w = disorder_sweep(wild, Dispersion(), 50.0, 3.0);
  CHECK(w.n_discarded > 0);
  CHECK(w.n_retained + w.n_discarded == 20);
  CHECK_THROWS_AS(disorder_sweep(st, Dispersion(Sinusoidal{50.0, 2.0, 1.0}), 50.0, 30.0), Error);
}

TEST_CASE("scaling study range") {
  FidelityProblem p;
  CHECK_THROWS_AS(scaling_study(p, 1, 14), Error);
  p.n_starts = 2;
  const ScalingResult r = scaling_study(p, 1, 3);
  CHECK(r.report.rows.size() == 3);
  CHECK(std::abs(r.optima[0].p2_max - 4.0 / std::exp(2.0)) < 5e-6);
  CHECK(r.fit.slope > 0);
}

TEST_CASE("wide curved band reduces to the linear band") {
  const std::vector<TildeLeg> legs{{0.0, {0.42 / std::sqrt(pi * (0.42 * 0.42 + 0.38 * 0.38)), 0.0}},
                                   {1.1, {0.38 / std::sqrt(pi * (0.42 * 0.42 + 0.38 * 0.38)), 0.0}}};
  FidelityProblem p;
  p.grid_K = 40.0;
  p.grid_n = 2048;
  const StudyReport r = dispersion_scan(legs, {2000.0}, {10.0}, false, p);
  // same truncated grid with the linear band
  SystemSpec spec;
  spec.pair.atom1 = from_tilde(legs, 50.0);
  spec.pair.d = 10.0;
  spec.grid = chiral_grid(50.0, 40.0, 2048);
  spec.chiral_mode = ChiralMode::AssumeChiral;
  const double lin = simulate(spec).p2_max;
  CHECK(r.rows[0][2] == doctest::Approx(lin).epsilon(1e-4));
}

TEST_CASE("narrower bands spread the Gaussian design") {
  ProfileScanOptions o;
  o.K = 12.0;
  o.n_modes = 1024;
  const auto prof = continuum_dispersion_profiles(Gaussian{1.0}, {0.0, 4.0, 2.0}, 30.0, 34.0, o);
  REQUIRE(prof.size() == 3);
  CHECK(prof[1].second_moment > prof[0].second_moment);
  CHECK(prof[2].second_moment > prof[1].second_moment);
}

TEST_CASE("appendix A chirality doubling") {
  const StudyReport r = appendix_a_pipeline();
  CHECK(r.scalars.at("n_phases") == 2.0);
  CHECK(r.scalars.at("g_minus") < 1e-12);
  CHECK(r.scalars.at("g_plus_error") < 1e-12);
  CHECK(r.scalars.at("left_population") < 1e-2);
  CHECK(r.scalars.at("p2_max") > 0.5);
  CHECK(r.scalars.at("p2_max") < 0.99);
}
