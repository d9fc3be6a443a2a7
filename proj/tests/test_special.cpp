#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gat/special_functions.hpp"

using namespace gat;

// Reference values from mpmath at 30 digits.
TEST_CASE("faddeeva against high-precision values") {
  struct Row {
    double x, y, re, im;
  };
  const Row rows[] = {
      {0.5, 0.5, 0.53315670791217491377, 0.23048823138445840871},
      {1, 2, 0.21849261527489069682, 0.092997809392601866048},
      {3, -1, -0.064673574793859687036, 0.17373084850174396446},
      {-2, 0.3, 0.076395951675642116857, -0.30983110714029269674},
      {0.1, -0.2, 1.2566938731503850549, 0.16244298499632387025},
      {5, 5, 0.056965439888176978967, 0.055838742775391028233},
      {35, 1, 0.00046075083257156139951, 0.016113109463969216248},
      {-40, -3, -0.0010529131710370759795, -0.014030109053444450166},
      {0, 0.001, 0.9988726200811514086, 0.0},
      {6, 0.01, 0.00016375289889683184285, 0.095395923386601482412},
  };
  for (const auto& r : rows) {
    const auto w = faddeeva({r.x, r.y});
    const double scale = std::abs(std::complex<double>(r.re, r.im));
    CHECK(std::abs(w - std::complex<double>(r.re, r.im)) < 1e-13 * std::max(1.0, scale));
  }
}

TEST_CASE("faddeeva on the real axis is exp(-x^2) + 2i/sqrt(pi) F(x)") {
  const double xs[] = {0.2, 1.5, 4.0, 12.0};
  const double F[] = {0.19475103336802805924, 0.42824907108539862548, 0.12934800123600511559,
                      0.041812876453988260318};
  for (int i = 0; i < 4; ++i) {
    CHECK(dawson(xs[i]) == doctest::Approx(F[i]).epsilon(1e-13));
    const auto w = faddeeva_real(xs[i]);
    CHECK(w.real() == doctest::Approx(std::exp(-xs[i] * xs[i])).epsilon(1e-14));
    CHECK(w.imag() == doctest::Approx(2.0 / std::sqrt(std::numbers::pi) * F[i]).epsilon(1e-13));
  }
  CHECK(dawson(-1.5) == doctest::Approx(-0.42824907108539862548).epsilon(1e-13));
}

TEST_CASE("modified Bessel K0 and K1") {
  struct Row {
    double x, k0, k1;
  };
  const Row rows[] = {
      {0.01, 4.7212447301610949443, 99.973894118296245561},
      {0.3, 1.3724600605442974106, 3.0559920334573251072},
      {1.0, 0.42102443824070833334, 0.60190723019723457474},
      {2.5, 0.062347553200366186029, 0.073890816347747063649},
      {7.0, 0.00042479574186923180685, 0.00045418248688489697124},
      {15.0, 9.819536482396434541e-8, 1.014172936976209181e-7},
  };
  for (const auto& r : rows) {
    CHECK(bessel_k0(r.x) == doctest::Approx(r.k0).epsilon(1e-12));
    CHECK(bessel_k1(r.x) == doctest::Approx(r.k1).epsilon(1e-12));
  }
}

TEST_CASE("Bessel J sequence by backward recurrence") {
  struct Row {
    double x;
    int n;
    double j;
  };
  const Row rows[] = {
      {1.0, 0, 0.76519768655796655145},      {1.0, 5, 0.00024975773021123443138},
      {10.0, 3, 0.058379379305186812343},    {10.0, 20, 0.000011513369247813397783},
      {250.0, 7, 0.045567684036127299528},   {250.0, 260, 0.0069759543284059551401},
  };
  std::vector<double> out;
  for (const auto& r : rows) {
    bessel_j_sequence(r.x, r.n + 5, out);
    REQUIRE(int(out.size()) >= r.n + 1);
    CHECK(std::abs(out[r.n] - r.j) < 1e-13);
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto gl = gauss_legendre(8);
  double s0 = 0, s14 = 0, s15 = 0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    s0 += gl.weights[i];
    s14 += gl.weights[i] * std::pow(gl.nodes[i], 14);
    s15 += gl.weights[i] * std::pow(gl.nodes[i], 15);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
  CHECK(std::abs(s15) < 1e-15);
}
