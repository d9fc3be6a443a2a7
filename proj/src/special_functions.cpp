#include "gat/special_functions.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

#include "gat/errors.hpp"

namespace gat {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kWeidemanN = 48;

// Weideman's rational expansion, valid in the closed upper half plane.
struct WeidemanCoefficients {
  double L;
  std::array<double, kWeidemanN> a;
};

WeidemanCoefficients make_weideman() {
  WeidemanCoefficients c{};
  const int N = kWeidemanN;
  const int M = 2 * N;
  const int M2 = 2 * M;
  c.L = std::sqrt(N / std::sqrt(2.0));
  // f sampled on the M2-point periodic grid, f[0] = 0 at theta = -pi.
  std::vector<double> f(M2, 0.0);
  for (int k = -M + 1; k <= M - 1; ++k) {
    const double theta = k * pi / M;
    const double t = c.L * std::tan(0.5 * theta);
    f[k + M] = std::exp(-t * t) * (c.L * c.L + t * t);
  }
  // a_n = Re(fft(fftshift(f)))[n] / M2 for n = 1..N, stored highest power first.
  std::vector<double> shifted(M2);
  for (int j = 0; j < M2; ++j) shifted[j] = f[(j + M) % M2];
  for (int n = 1; n <= N; ++n) {
    double s = 0.0;
    for (int j = 0; j < M2; ++j) s += shifted[j] * std::cos(2.0 * pi * double(n) * double(j) / M2);
    c.a[N - n] = s / M2;
  }
  return c;
}

const WeidemanCoefficients& weideman() {
  static const WeidemanCoefficients c = make_weideman();
  return c;
}

std::complex<double> weideman_upper(std::complex<double> z) {
  const auto& c = weideman();
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> denom = c.L - I * z;
  const std::complex<double> Z = (c.L + I * z) / denom;
  std::complex<double> p = 0.0;
  for (double an : c.a) p = p * Z + an;
  return 2.0 * p / (denom * denom) + (1.0 / std::sqrt(pi)) / denom;
}

// Laplace continued fraction, accurate for large |z| in the upper half plane.
std::complex<double> faddeeva_asymptotic(std::complex<double> z) {
  const std::complex<double> I(0.0, 1.0);
  std::complex<double> r = 0.0;
  for (int n = 60; n >= 1; --n) r = (0.5 * n) / (z - r);
  return I / (std::sqrt(pi) * (z - r));
}

}  // namespace

std::complex<double> faddeeva(std::complex<double> z) {
  if (z.imag() < 0) {
    // w(z) = 2 exp(-z^2) - w(-z)
    return 2.0 * std::exp(-z * z) - faddeeva(-z);
  }
  if (std::abs(z) > 30.0) return faddeeva_asymptotic(z);
  return weideman_upper(z);
}

std::complex<double> faddeeva_real(double x) {
  return {std::exp(-x * x), 2.0 / std::sqrt(pi) * dawson(x)};
}

double dawson(double x) {
  const double ax = std::abs(x);
  double v;
  if (ax < 0.2) {
    // Taylor series: x - 2x^3/3 + 4x^5/15 - ...
    const double x2 = x * x;
    double term = x, sum = x;
    for (int n = 1; n < 30; ++n) {
      term *= -2.0 * x2 / double(2 * n + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  } else if (ax > 30.0) {
    v = faddeeva_asymptotic({ax, 0.0}).imag();
  } else {
    v = weideman_upper({ax, 0.0}).imag();
  }
  return std::copysign(0.5 * std::sqrt(pi) * v, x);
}

double bessel_k0(double x) { return std::cyl_bessel_k(0.0, x); }
double bessel_k1(double x) { return std::cyl_bessel_k(1.0, x); }

void bessel_j_sequence(double x, int n_max, std::vector<double>& out) {
  out.assign(n_max + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return;
  }
  const double ax = std::abs(x);
  // Start well above both n_max and x so the minimal solution dominates.
  int start = std::max(n_max, int(ax)) + 20 + int(3.0 * std::cbrt(std::max(ax, 1.0)) * 4.0);
  start += start % 2;
  double jp1 = 0.0, j = 1e-300, norm = 0.0;
  std::vector<double> tmp(start + 1, 0.0);
  tmp[start] = j;
  for (int n = start; n >= 1; --n) {
    const double jm1 = 2.0 * n / ax * j - jp1;
    jp1 = j;
    j = jm1;
    tmp[n - 1] = j;
    if (std::abs(j) > 1e250) {
      // rescale to avoid overflow
      for (int m = n - 1; m <= start; ++m) tmp[m] *= 1e-250;
      j *= 1e-250;
      jp1 *= 1e-250;
    }
  }
  norm = tmp[0];
  for (int n = 2; n <= start; n += 2) norm += 2.0 * tmp[n];
  const double scale = 1.0 / norm;
  for (int n = 0; n <= n_max; ++n) {
    double v = tmp[n] * scale;
    if (x < 0 && (n % 2)) v = -v;
    out[n] = v;
  }
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::InvalidConfig, "Gauss-Legendre rule needs n >= 1");
  GaussLegendre r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace gat
