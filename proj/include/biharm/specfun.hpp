// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace biharm::specfun
{

inline constexpr int kMaxBesselOrder = 60;
inline constexpr int kMaxZeroIndex = 200;
inline constexpr int kMaxGaussPoints = 512;

// Spherical Bessel function of the first kind. Valid for 0 <= l <= 60, x >= 0.
double spherical_bessel_j(int l, double x);

// j_0(x), ..., j_lmax(x) written to out (size lmax + 1).
void spherical_bessel_j_all(int lmax, double x, std::span<double> out);

double spherical_bessel_j_derivative(int l, double x);

// Second kind, x > 0. Upward recurrence, stable for all l.
double spherical_bessel_y(int l, double x);

// Modified spherical Bessel functions, i_0(x) = sinh(x)/x and k_0(x) = exp(-x)/x.
// With this scaling i_l k_l' - i_l' k_l = -1/x^2.
double modified_spherical_bessel_i(int l, double x);
double modified_spherical_bessel_k(int l, double x);

struct BesselZero
{
  int l = 0;
  int n = 1;
  double alpha = 0.0;
};

BesselZero bessel_zero(int l, int n);

// First `count` positive zeros of j_l, ascending.
std::vector<double> bessel_zeros(int l, int count);

// Orthonormal real harmonics on the unit sphere. Y_lm ~ cos(m phi) for m > 0 and
// sin(|m| phi) for m < 0, no Condon-Shortley phase.
double real_spherical_harmonic(int l, int m, double theta, double phi);

// All Y_lm with l <= lmax; entry l*l + l + m. out.size() >= (lmax + 1)^2.
void real_spherical_harmonics_all(int lmax, double theta, double phi, std::span<double> out);

inline constexpr int harmonic_index(int l, int m)
{
  return l * l + l + m;
}

struct GaussNode
{
  double node;
  double weight;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending.
std::vector<GaussNode> gauss_legendre(int n);

}  // namespace biharm::specfun
