// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "biharm/quadrature.hpp"
#include "biharm/resolvent.hpp"
#include "biharm/spectral.hpp"

namespace biharm::inverse
{

using resolvent::BoundaryDataset;

struct SourceSpec
{
  // f_j against the (free or perturbed) eigenbasis, in pair order.
  std::vector<double> coefficients;
  int smoothness_order = 2;
  double Q = 1.0;

  double norm_sq() const;
  bool operator==(const SourceSpec &) const = default;
};

// f = sum_j f_j phi_j sampled at the rule nodes; needs at least as many pairs as coefficients.
std::vector<double> synthesize(const SourceSpec &source, std::span<const spectral::EigenPair> pairs,
                               const quad::QuadratureRule &grid);

// Data-norm weights: (kappa^4, kappa^2) without potential, (kappa^4, kappa^8) with one.
enum class WeightConvention
{
  unperturbed,
  perturbed
};

WeightConvention convention_for(const spectral::PotentialSpec &V);

struct ConsistencyTolerance
{
  double rel = 1e-6;
  double abs = 1e-10;
  bool enabled = true;
};

// -sum_s w_s (Delta u dnu phi + u dnu Delta phi). Throws ConsistencyError when the imaginary
// part exceeds the tolerance and invalid_argument on a wavenumber or size mismatch.
double recover_coefficient(const BoundaryDataset &data, const spectral::EigenPair &pair,
                           const quad::QuadratureRule &sphere,
                           const ConsistencyTolerance &tol = {});

// -int Delta u dnu phi + kappa^2 int u dnu phi, valid for free pairs only.
double recover_coefficient_free_form(const BoundaryDataset &data, const spectral::EigenPair &pair,
                                     const quad::QuadratureRule &sphere,
                                     const ConsistencyTolerance &tol = {});

double weighted_data_norm_sq(const BoundaryDataset &data, const quad::QuadratureRule &sphere,
                             WeightConvention convention);

struct RecoveredCoefficient
{
  int index;  // 1-based
  double kappa;
  double value;
};

struct ReconstructionResult
{
  std::vector<RecoveredCoefficient> recovered;
  int N = 0;
  double discrepancy_sq = 0.0;
  // Truth energy beyond N; zero without truth.
  double tail_sq = 0.0;
  bool has_truth = false;
  double l2_error_sq = 0.0;
};

// Recovers f_1..f_N from datasets matched to kappa_j by wavenumber. Consistency checks are
// skipped for datasets carrying noise.
ReconstructionResult reconstruct(std::span<const BoundaryDataset> datasets,
                                 std::span<const spectral::EigenPair> pairs, int N,
                                 const quad::QuadratureRule &sphere, WeightConvention convention,
                                 const SourceSpec *truth = nullptr,
                                 const ConsistencyTolerance &tol = {});

// Q^2 / s^{(2/3)(n+1)}.
double tail_bound(const SourceSpec &source, int s);

// Sum_{j >= s} f_j^2 of the listed coefficients.
double tail_energy(const SourceSpec &source, int s);

struct ContinuationParams
{
  double A = 0.5;
  double eps_shift = 0.5;
  double A1 = 1.0;
  double a = 1.0;
  double d = 1.0;
  double A_tilde = 0.0;
  double A_tilde1 = 1.0;
  double C0 = 0.0;

  void validate() const;
  bool operator==(const ContinuationParams &) const = default;
};

double continuation_bound_beta(double kappa, const ContinuationParams &params);
double continuation_bound_eta(double kappa, const ContinuationParams &params);

struct ContinuationSample
{
  double kappa;
  double I;
  double exponent;
  double ratio;
};

struct ContinuationReport
{
  double eps1_sq = 0.0;
  std::vector<ContinuationSample> samples;
  // Ratio at the first test point, used as the frozen constant.
  double fitted_constant = 0.0;
  int violations = 0;
  bool bounded = true;
};

// band: data on the low band, (eps, A1) or (A_tilde, A_tilde1) by convention.
// tests: data above A1 (A_tilde1). Violations are recorded, not thrown.
ContinuationReport verify_continuation_inequality(std::span<const BoundaryDataset> band,
                                                  std::span<const BoundaryDataset> tests,
                                                  const ContinuationParams &params, double Q,
                                                  double R, const quad::QuadratureRule &sphere,
                                                  WeightConvention convention);

}  // namespace biharm::inverse
