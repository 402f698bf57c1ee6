// SPDX-License-Identifier: Apache-2.0

#include "biharm/inverse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"

namespace biharm::inverse
{

using resolvent::cplx;

namespace
{

bool same_kappa(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(b)); }

void check_sizes(const BoundaryDataset &data, const spectral::EigenPair &pair,
                 const quad::QuadratureRule &sphere)
{
  if (sphere.kind != quad::RuleKind::sphere)
  {
    throw std::invalid_argument("recover_coefficient: boundary rule must be a sphere rule");
  }
  const std::size_t n = sphere.size();
  if (data.u_values.size() != n || data.lap_u_values.size() != n)
  {
    throw std::invalid_argument("recover_coefficient: data size differs from the sphere rule");
  }
  if (pair.norm_trace.size() != n || pair.lap_trace.size() != n)
  {
    throw std::invalid_argument("recover_coefficient: traces missing or on another rule");
  }
  if (!same_kappa(data.kappa, pair.kappa))
  {
    throw std::invalid_argument("recover_coefficient: data at kappa " + std::to_string(data.kappa) +
                                " but pair has kappa " + std::to_string(pair.kappa));
  }
}

double checked_real(cplx v, const ConsistencyTolerance &tol)
{
  if (tol.enabled && std::abs(v.imag()) > tol.rel * std::abs(v.real()) + tol.abs)
  {
    throw ConsistencyError("recovered coefficient has imaginary part " + std::to_string(v.imag()) +
                           " against real part " + std::to_string(v.real()));
  }
  return v.real();
}

}  // namespace

double SourceSpec::norm_sq() const
{
  double s = 0.0;
  for (double c : coefficients)
  {
    s += c * c;
  }
  return s;
}

std::vector<double> synthesize(const SourceSpec &source, std::span<const spectral::EigenPair> pairs,
                               const quad::QuadratureRule &grid)
{
  if (source.coefficients.size() > pairs.size())
  {
    throw std::invalid_argument("synthesize: more coefficients than eigenpairs");
  }
  std::vector<double> f(grid.size(), 0.0);
  for (std::size_t j = 0; j < source.coefficients.size(); ++j)
  {
    const double c = source.coefficients[j];
    if (c == 0.0)
    {
      continue;
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      f[i] += c * spectral::evaluate(pairs[j], grid.nodes[i]);
    }
  }
  return f;
}

WeightConvention convention_for(const spectral::PotentialSpec &V)
{
  return V.is_zero() ? WeightConvention::unperturbed : WeightConvention::perturbed;
}

double recover_coefficient(const BoundaryDataset &data, const spectral::EigenPair &pair,
                           const quad::QuadratureRule &sphere, const ConsistencyTolerance &tol)
{
  check_sizes(data, pair, sphere);
  cplx s = 0.0;
  for (std::size_t i = 0; i < sphere.size(); ++i)
  {
    s += sphere.weights[i] *
         (data.lap_u_values[i] * pair.norm_trace[i] + data.u_values[i] * pair.lap_trace[i]);
  }
  return checked_real(-s, tol);
}

double recover_coefficient_free_form(const BoundaryDataset &data, const spectral::EigenPair &pair,
                                     const quad::QuadratureRule &sphere,
                                     const ConsistencyTolerance &tol)
{
  if (pair.perturbed)
  {
    throw std::invalid_argument("recover_coefficient_free_form: pair must be a free mode");
  }
  check_sizes(data, pair, sphere);
  cplx a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < sphere.size(); ++i)
  {
    a += sphere.weights[i] * data.lap_u_values[i] * pair.norm_trace[i];
    b += sphere.weights[i] * data.u_values[i] * pair.norm_trace[i];
  }
  return checked_real(-a + pair.kappa * pair.kappa * b, tol);
}

double weighted_data_norm_sq(const BoundaryDataset &data, const quad::QuadratureRule &sphere,
                             WeightConvention convention)
{
  if (data.u_values.size() != sphere.size() || data.lap_u_values.size() != sphere.size())
  {
    throw std::invalid_argument("weighted_data_norm_sq: data size differs from the sphere rule");
  }
  double nu = 0.0, nl = 0.0;
  for (std::size_t i = 0; i < sphere.size(); ++i)
  {
    nu += sphere.weights[i] * std::norm(data.u_values[i]);
    nl += sphere.weights[i] * std::norm(data.lap_u_values[i]);
  }
  const double k2 = data.kappa * data.kappa;
  const double wl = convention == WeightConvention::unperturbed ? k2 : k2 * k2 * k2 * k2;
  return k2 * k2 * nu + wl * nl;
}

ReconstructionResult reconstruct(std::span<const BoundaryDataset> datasets,
                                 std::span<const spectral::EigenPair> pairs, int N,
                                 const quad::QuadratureRule &sphere, WeightConvention convention,
                                 const SourceSpec *truth, const ConsistencyTolerance &tol)
{
  if (N < 0 || static_cast<std::size_t>(N) > pairs.size())
  {
    throw std::invalid_argument("reconstruct: N=" + std::to_string(N) + " outside [0, " +
                                std::to_string(pairs.size()) + "]");
  }
  const auto n = static_cast<std::size_t>(N);
  std::vector<std::size_t> match(n);
  for (std::size_t j = 0; j < n; ++j)
  {
    std::size_t k = 0;
    while (k < datasets.size() && !same_kappa(datasets[k].kappa, pairs[j].kappa))
    {
      ++k;
    }
    if (k == datasets.size())
    {
      throw std::invalid_argument("reconstruct: no dataset at kappa_" + std::to_string(j + 1) +
                                  " = " + std::to_string(pairs[j].kappa));
    }
    match[j] = k;
  }

  ReconstructionResult res;
  res.N = N;
  res.recovered.resize(n);
  std::vector<double> weighted(n);
  parallel_for(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t j = b; j < e; ++j)
    {
      const auto &d = datasets[match[j]];
      ConsistencyTolerance t = tol;
      t.enabled = tol.enabled && d.noise_level == 0.0;
      res.recovered[j] = {static_cast<int>(j + 1), pairs[j].kappa,
                          recover_coefficient(d, pairs[j], sphere, t)};
      weighted[j] = weighted_data_norm_sq(d, sphere, convention);
    }
  });
  for (double w : weighted)
  {
    res.discrepancy_sq += w;
  }

  if (truth != nullptr)
  {
    res.has_truth = true;
    const auto &t = truth->coefficients;
    for (std::size_t j = 0; j < std::max(n, t.size()); ++j)
    {
      const double tj = j < t.size() ? t[j] : 0.0;
      if (j < n)
      {
        const double d = tj - res.recovered[j].value;
        res.l2_error_sq += d * d;
      }
      else
      {
        res.l2_error_sq += tj * tj;
        res.tail_sq += tj * tj;
      }
    }
  }
  return res;
}

double tail_bound(const SourceSpec &source, int s)
{
  if (s < 1)
  {
    throw std::invalid_argument("tail_bound: s must be >= 1");
  }
  if (source.smoothness_order < 0 || !(source.Q >= 0.0))
  {
    throw std::invalid_argument("tail_bound: smoothness_order and Q must be non-negative");
  }
  return source.Q * source.Q /
         std::pow(static_cast<double>(s), 2.0 * (source.smoothness_order + 1) / 3.0);
}

double tail_energy(const SourceSpec &source, int s)
{
  if (s < 1)
  {
    throw std::invalid_argument("tail_energy: s must be >= 1");
  }
  double t = 0.0;
  for (std::size_t j = static_cast<std::size_t>(s - 1); j < source.coefficients.size(); ++j)
  {
    t += source.coefficients[j] * source.coefficients[j];
  }
  return t;
}

void ContinuationParams::validate() const
{
  for (double v : {A, eps_shift, A1, a, d, A_tilde, A_tilde1, C0})
  {
    if (!std::isfinite(v))
    {
      throw std::invalid_argument("ContinuationParams: non-finite value");
    }
  }
  if (!(A > 0.0) || !(eps_shift > 0.0))
  {
    throw std::invalid_argument("ContinuationParams: A and eps_shift must be positive");
  }
  if (std::abs(A1 - (A + eps_shift)) > 1e-12 * std::max(1.0, A1))
  {
    throw std::invalid_argument("ContinuationParams: A1 must equal A + eps_shift");
  }
  if (!(d > 0.0) || !(a > 0.0))
  {
    throw std::invalid_argument("ContinuationParams: a and d must be positive");
  }
  if (std::abs(a - (A_tilde1 - A_tilde)) > 1e-12 * std::max(1.0, a))
  {
    throw std::invalid_argument("ContinuationParams: a must equal A_tilde1 - A_tilde");
  }
}

double continuation_bound_beta(double kappa, const ContinuationParams &p)
{
  p.validate();
  if (!(kappa > p.A1))
  {
    throw std::invalid_argument("continuation_bound_beta: kappa must exceed A1");
  }
  if (kappa <= p.eps_shift + std::pow(2.0, 0.25) * p.A)
  {
    return 0.5;
  }
  const double q = (kappa - p.eps_shift) / p.A;
  return 1.0 / (std::numbers::pi * std::sqrt(q * q * q * q - 1.0));
}

double continuation_bound_eta(double kappa, const ContinuationParams &p)
{
  p.validate();
  if (!(kappa > p.A_tilde1))
  {
    throw std::invalid_argument("continuation_bound_eta: kappa must exceed A_tilde1");
  }
  const double pi = std::numbers::pi;
  return 64.0 * p.a * p.d / (3.0 * pi * pi * (p.a * p.a + 4.0 * p.d * p.d)) *
         std::exp(pi / (2.0 * p.d) * (p.a / 2.0 - kappa));
}

ContinuationReport verify_continuation_inequality(std::span<const BoundaryDataset> band,
                                                  std::span<const BoundaryDataset> tests,
                                                  const ContinuationParams &params, double Q,
                                                  double R, const quad::QuadratureRule &sphere,
                                                  WeightConvention convention)
{
  params.validate();
  if (band.empty() || tests.empty())
  {
    throw std::invalid_argument("verify_continuation_inequality: band and test data required");
  }
  if (!(Q > 0.0) || !(R > 0.0))
  {
    throw std::invalid_argument("verify_continuation_inequality: Q and R must be positive");
  }
  const bool free = convention == WeightConvention::unperturbed;
  const double lo = free ? params.eps_shift : params.A_tilde;
  const double hi = free ? params.A1 : params.A_tilde1;
  ContinuationReport rep;
  for (const auto &d : band)
  {
    if (d.kappa < lo || d.kappa > hi)
    {
      throw std::invalid_argument("verify_continuation_inequality: band kappa " +
                                  std::to_string(d.kappa) + " outside the low band");
    }
    rep.eps1_sq = std::max(rep.eps1_sq, weighted_data_norm_sq(d, sphere, convention));
  }
  for (const auto &d : tests)
  {
    if (!(d.kappa > hi))
    {
      throw std::invalid_argument("verify_continuation_inequality: test kappa " +
                                  std::to_string(d.kappa) + " not above the band");
    }
    ContinuationSample s{};
    s.kappa = d.kappa;
    s.I = weighted_data_norm_sq(d, sphere, convention);
    s.exponent =
        free ? continuation_bound_beta(d.kappa, params) : continuation_bound_eta(d.kappa, params);
    if (s.I == 0.0)
    {
      s.ratio = 0.0;
    }
    else if (rep.eps1_sq == 0.0)
    {
      s.ratio = std::numeric_limits<double>::infinity();
    }
    else
    {
      // eps1^{2 beta} = (eps1^2)^beta; logs keep e^{6 R kappa} in range.
      s.ratio = std::exp(std::log(s.I) - 2.0 * std::log(Q) - 6.0 * R * d.kappa -
                         s.exponent * std::log(rep.eps1_sq));
    }
    rep.samples.push_back(s);
  }
  rep.fitted_constant = rep.samples.front().ratio;
  for (const auto &s : rep.samples)
  {
    if (!(s.ratio <= rep.fitted_constant * (1.0 + 1e-9)))
    {
      ++rep.violations;
    }
  }
  rep.bounded = rep.violations == 0;
  return rep;
}

}  // namespace biharm::inverse
