// SPDX-License-Identifier: Apache-2.0
// Compactly supported radial test solution psi = (1 - r^2/rho^2)^6 and its source
// f = (Delta^2 - kappa^4) psi, all as polynomials in s = r^2/rho^2.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "biharm/quadrature.hpp"

namespace biharm::testing
{

using Poly = std::vector<double>;

inline Poly psi_poly()
{
  Poly p(7);
  double c = 1.0;
  for (int k = 0; k <= 6; ++k)
  {
    p[k] = (k % 2 == 0 ? c : -c);
    c = c * (6 - k) / (k + 1);
  }
  return p;
}

// Radial Laplacian in the s variable: (4 s p'' + 6 p') / rho^2.
inline Poly laplacian_s(const Poly &p, double rho)
{
  Poly out(p.size(), 0.0);
  for (std::size_t k = 1; k < p.size(); ++k)
  {
    const double kk = static_cast<double>(k);
    out[k - 1] += (4.0 * kk * (kk - 1) + 6.0 * kk) * p[k] / (rho * rho);
  }
  return out;
}

inline double eval(const Poly &p, double s)
{
  double v = 0;
  for (std::size_t k = p.size(); k-- > 0;)
  {
    v = v * s + p[k];
  }
  return v;
}

inline double manufactured_psi(double r, double rho)
{
  const double s = r * r / (rho * rho);
  return s < 1 ? eval(psi_poly(), s) : 0.0;
}

inline std::vector<double> manufactured_source(const quad::QuadratureRule &grid, double rho,
                                               double kappa)
{
  const Poly p = psi_poly();
  const Poly bil = laplacian_s(laplacian_s(p, rho), rho);
  const double k4 = std::pow(kappa, 4);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const double s = grid.coords[i].r * grid.coords[i].r / (rho * rho);
    f[i] = s < 1 ? eval(bil, s) - k4 * eval(p, s) : 0.0;
  }
  return f;
}

// Up to `count` nodes with r < r_max, spread evenly over the candidates.
inline std::vector<std::size_t> probe_nodes(const quad::QuadratureRule &grid, double r_max,
                                            std::size_t count)
{
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    if (grid.coords[i].r < r_max)
    {
      cand.push_back(i);
    }
  }
  std::vector<std::size_t> out;
  if (cand.empty())
  {
    return out;
  }
  const std::size_t n = std::min(count, cand.size());
  for (std::size_t k = 0; k < n; ++k)
  {
    out.push_back(cand[(k * cand.size()) / n]);
  }
  return out;
}

}  // namespace biharm::testing
