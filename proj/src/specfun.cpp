// SPDX-License-Identifier: Apache-2.0

#include "biharm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biharm::specfun
{

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr int kMillerPad = 20;
constexpr int kMaxMillerStart = 256;

void check_order(int l, const char *who)
{
  if (l < 0 || l > kMaxBesselOrder)
  {
    throw std::invalid_argument(std::string(who) + ": order l=" + std::to_string(l) +
                                " outside [0, " + std::to_string(kMaxBesselOrder) + "]");
  }
}

void check_argument(double x, const char *who)
{
  if (!std::isfinite(x) || x < 0.0)
  {
    throw std::invalid_argument(std::string(who) + ": argument must be finite and >= 0");
  }
}

// x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)...(2l+2k+1))
double series_j(int l, double x)
{
  double pref = 1.0;
  for (int k = 1; k <= l; ++k)
  {
    pref *= x / (2.0 * k + 1.0);
  }
  const double h = -0.5 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k)
  {
    term *= h / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum))
    {
      break;
    }
  }
  return pref * sum;
}

// Same series with +x^2/2; all terms positive so no cancellation at any x.
double series_i(int l, double x)
{
  double pref = 1.0;
  for (int k = 1; k <= l; ++k)
  {
    pref *= x / (2.0 * k + 1.0);
  }
  const double h = 0.5 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 5000; ++k)
  {
    term *= h / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (term <= 1e-17 * sum)
    {
      break;
    }
  }
  return pref * sum;
}

double closed_j(int l, double x)
{
  const double s = std::sin(x), c = std::cos(x);
  switch (l)
  {
    case 0:
      return s / x;
    case 1:
      return (s / x - c) / x;
    default:
      return ((3.0 / (x * x) - 1.0) * s - 3.0 * c / x) / x;
  }
}

void bessel_j_all_impl(int lmax, double x, std::span<double> out)
{
  std::fill(out.begin(), out.begin() + lmax + 1, 0.0);
  if (x == 0.0)
  {
    out[0] = 1.0;
    return;
  }
  if (x > lmax)
  {
    // Upward recurrence is stable while l < x.
    out[0] = std::sin(x) / x;
    if (lmax >= 1)
    {
      out[1] = x < 0.5 ? series_j(1, x) : closed_j(1, x);
    }
    for (int l = 1; l < lmax; ++l)
    {
      out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
    }
    return;
  }

  // Miller: downward from well above lmax, normalized by sum (2k+1) j_k^2 = 1.
  const int start = std::min(
      kMaxMillerStart - 1,
      lmax + kMillerPad + static_cast<int>(std::sqrt(40.0 * (lmax + 1))));
  std::array<double, kMaxMillerStart + 1> t{};
  t[start + 1] = 0.0;
  t[start] = 1e-300;
  for (int k = start; k >= 1; --k)
  {
    t[k - 1] = (2.0 * k + 1.0) / x * t[k] - t[k + 1];
    if (std::abs(t[k - 1]) > 1e250)
    {
      for (int q = k - 1; q <= start; ++q)
      {
        t[q] *= 1e-250;
      }
    }
  }
  double big = 0.0;
  for (int k = 0; k <= start; ++k)
  {
    big = std::max(big, std::abs(t[k]));
  }
  double sum = 0.0;
  for (int k = start; k >= 0; --k)
  {
    const double v = t[k] / big;
    sum += (2.0 * k + 1.0) * v * v;
  }
  double scale = 1.0 / (big * std::sqrt(sum));

  // Fix the overall sign against whichever of j_0, j_1 is larger.
  const double j0 = std::sin(x) / x;
  const double j1 = x < 0.5 ? series_j(1, x) : closed_j(1, x);
  const double ref = std::abs(j0) >= std::abs(j1) ? j0 : j1;
  const double got = std::abs(j0) >= std::abs(j1) ? t[0] : t[1];
  if ((ref < 0.0) != (got < 0.0))
  {
    scale = -scale;
  }
  for (int l = 0; l <= lmax; ++l)
  {
    out[l] = t[l] * scale;
  }
}

}  // namespace

double spherical_bessel_j(int l, double x)
{
  check_order(l, "spherical_bessel_j");
  if (!std::isfinite(x))
  {
    throw std::invalid_argument("spherical_bessel_j: argument must be finite");
  }
  if (x < 0.0)
  {
    // j_l(-x) = (-1)^l j_l(x)
    const double v = spherical_bessel_j(l, -x);
    return (l % 2 == 0) ? v : -v;
  }
  if (x == 0.0)
  {
    return l == 0 ? 1.0 : 0.0;
  }
  if (x * x <= 2.0 * l + 3.0)
  {
    return series_j(l, x);
  }
  if (l <= 2)
  {
    return closed_j(l, x);
  }
  std::array<double, kMaxBesselOrder + 1> buf{};
  bessel_j_all_impl(l, x, buf);
  return buf[l];
}

void spherical_bessel_j_all(int lmax, double x, std::span<double> out)
{
  check_order(lmax, "spherical_bessel_j_all");
  check_argument(x, "spherical_bessel_j_all");
  if (out.size() < static_cast<std::size_t>(lmax + 1))
  {
    throw std::invalid_argument("spherical_bessel_j_all: output span too small");
  }
  bessel_j_all_impl(lmax, x, out);
}

double spherical_bessel_j_derivative(int l, double x)
{
  check_order(l, "spherical_bessel_j_derivative");
  if (!std::isfinite(x))
  {
    throw std::invalid_argument("spherical_bessel_j_derivative: argument must be finite");
  }
  if (x == 0.0)
  {
    return l == 1 ? 1.0 / 3.0 : 0.0;
  }
  if (l == 0)
  {
    return -spherical_bessel_j(1, x);
  }
  return spherical_bessel_j(l - 1, x) - (l + 1.0) / x * spherical_bessel_j(l, x);
}

double spherical_bessel_y(int l, double x)
{
  check_order(l, "spherical_bessel_y");
  if (!std::isfinite(x) || x <= 0.0)
  {
    throw std::invalid_argument("spherical_bessel_y: argument must be finite and > 0");
  }
  const double s = std::sin(x), c = std::cos(x);
  double ym1 = -c / x;
  if (l == 0)
  {
    return ym1;
  }
  double y = -c / (x * x) - s / x;
  for (int k = 1; k < l; ++k)
  {
    const double next = (2.0 * k + 1.0) / x * y - ym1;
    ym1 = y;
    y = next;
  }
  return y;
}

double modified_spherical_bessel_i(int l, double x)
{
  check_order(l, "modified_spherical_bessel_i");
  check_argument(x, "modified_spherical_bessel_i");
  if (x == 0.0)
  {
    return l == 0 ? 1.0 : 0.0;
  }
  return series_i(l, x);
}

double modified_spherical_bessel_k(int l, double x)
{
  check_order(l, "modified_spherical_bessel_k");
  if (!std::isfinite(x) || x <= 0.0)
  {
    throw std::invalid_argument("modified_spherical_bessel_k: argument must be finite and > 0");
  }
  const double e = std::exp(-x);
  double km1 = e / x;
  if (l == 0)
  {
    return km1;
  }
  double k = e * (1.0 / x + 1.0 / (x * x));
  for (int q = 1; q < l; ++q)
  {
    const double next = km1 + (2.0 * q + 1.0) / x * k;
    km1 = k;
    k = next;
  }
  return k;
}

namespace
{

double refine_zero(int l, double a, double b)
{
  double fa = spherical_bessel_j(l, a);
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it)
  {
    const double f = spherical_bessel_j(l, x);
    if (f == 0.0)
    {
      return x;
    }
    if ((f < 0.0) == (fa < 0.0))
    {
      a = x;
      fa = f;
    }
    else
    {
      b = x;
    }
    const double df = spherical_bessel_j_derivative(l, x);
    double xn = x - f / df;
    if (!(xn > a && xn < b))
    {
      xn = 0.5 * (a + b);
    }
    if (std::abs(xn - x) <= 4.0 * std::numeric_limits<double>::epsilon() * x)
    {
      return xn;
    }
    x = xn;
  }
  return x;
}

}  // namespace

std::vector<double> bessel_zeros(int l, int count)
{
  check_order(l, "bessel_zeros");
  if (count < 0 || count > kMaxZeroIndex)
  {
    throw std::invalid_argument("bessel_zeros: count outside [0, " +
                                std::to_string(kMaxZeroIndex) + "]");
  }
  std::vector<double> zeros;
  zeros.reserve(count);
  // The first zero exceeds l + 1/2 and consecutive zeros are more than pi apart,
  // so a step of 1/2 brackets each zero exactly once.
  constexpr double step = 0.5;
  double a = l + 0.5;
  double fa = spherical_bessel_j(l, a);
  while (static_cast<int>(zeros.size()) < count)
  {
    const double b = a + step;
    const double fb = spherical_bessel_j(l, b);
    if (fb == 0.0)
    {
      zeros.push_back(b);
      a = b + 1e-3;
      fa = spherical_bessel_j(l, a);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0))
    {
      zeros.push_back(refine_zero(l, a, b));
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

BesselZero bessel_zero(int l, int n)
{
  if (n < 1 || n > kMaxZeroIndex)
  {
    throw std::invalid_argument("bessel_zero: index n=" + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxZeroIndex) + "]");
  }
  const auto zeros = bessel_zeros(l, n);
  return {l, n, zeros.back()};
}

void real_spherical_harmonics_all(int lmax, double theta, double phi, std::span<double> out)
{
  if (lmax < 0)
  {
    throw std::invalid_argument("real_spherical_harmonics_all: lmax < 0");
  }
  if (out.size() < static_cast<std::size_t>((lmax + 1) * (lmax + 1)))
  {
    throw std::invalid_argument("real_spherical_harmonics_all: output span too small");
  }
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const double sqrt2 = std::numbers::sqrt2;

  double pmm = 0.5 / std::sqrt(kPi);
  for (int m = 0; m <= lmax; ++m)
  {
    if (m > 0)
    {
      pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    }
    const double cm = m == 0 ? 1.0 : sqrt2 * std::cos(m * phi);
    const double sm = m == 0 ? 0.0 : sqrt2 * std::sin(m * phi);

    // Normalized associated Legendre, upward in l at fixed m.
    double pl2 = 0.0, pl1 = 0.0;
    for (int l = m; l <= lmax; ++l)
    {
      double p;
      if (l == m)
      {
        p = pmm;
      }
      else if (l == m + 1)
      {
        p = std::sqrt(2.0 * m + 3.0) * x * pmm;
      }
      else
      {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) /
                                   (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        p = a * (x * pl1 - b * pl2);
      }
      pl2 = pl1;
      pl1 = p;
      out[harmonic_index(l, m)] = p * cm;
      if (m > 0)
      {
        out[harmonic_index(l, -m)] = p * sm;
      }
    }
  }
}

double real_spherical_harmonic(int l, int m, double theta, double phi)
{
  if (l < 0 || std::abs(m) > l)
  {
    throw std::invalid_argument("real_spherical_harmonic: need |m| <= l, got l=" +
                                std::to_string(l) + " m=" + std::to_string(m));
  }
  std::vector<double> buf((l + 1) * (l + 1));
  real_spherical_harmonics_all(l, theta, phi, buf);
  return buf[harmonic_index(l, m)];
}

std::vector<GaussNode> gauss_legendre(int n)
{
  if (n < 1 || n > kMaxGaussPoints)
  {
    throw std::invalid_argument("gauss_legendre: n=" + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxGaussPoints) + "]");
  }
  std::vector<GaussNode> rule(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i)
  {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it)
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k)
      {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16)
      {
        break;
      }
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k)
    {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1)
  {
    rule[n / 2].node = 0.0;
  }
  return rule;
}

}  // namespace biharm::specfun
