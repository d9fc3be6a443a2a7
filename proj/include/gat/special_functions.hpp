#pragma once

#include <complex>
#include <vector>

namespace gat {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
std::complex<double> faddeeva(std::complex<double> z);
// w(x) on the real axis with the exact real part exp(-x^2).
std::complex<double> faddeeva_real(double x);
// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

double bessel_k0(double x);
double bessel_k1(double x);

// J_0(x) ... J_{n_max}(x) by normalized backward recurrence.
void bessel_j_sequence(double x, int n_max, std::vector<double>& out);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
// n-point rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

}  // namespace gat
