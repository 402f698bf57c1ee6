// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "biharm/quadrature.hpp"

namespace biharm::spectral
{

enum class PotentialKind
{
  none,
  radial_bump,
  constant_test
};

std::string_view to_string(PotentialKind kind);
PotentialKind potential_kind_from_string(std::string_view name);

// Radial potentials. radial_bump: amplitude * (1 - r^2/s^2)^4 for r < s.
// constant_test: amplitude on the whole ball; not compactly supported inside B_R.
struct PotentialSpec
{
  PotentialKind kind = PotentialKind::none;
  double amplitude = 0.0;
  double support_radius = 0.5;

  double value(double r) const;
  bool is_zero() const { return kind == PotentialKind::none || amplitude == 0.0; }
  // Radius of the smallest ball containing the support, for a domain of radius R.
  double support(double R) const;
  void validate(double R) const;

  bool operator==(const PotentialSpec &) const = default;
};

std::vector<double> sample_potential(const PotentialSpec &V, const quad::QuadratureRule &rule);

struct ModeIndex
{
  int l = 0;
  int m = 0;
  int n = 1;
  bool operator==(const ModeIndex &) const = default;
};

struct EigenPair;
using Basis = std::vector<EigenPair>;

struct EigenPair
{
  double mu = 0.0;
  double kappa = 0.0;
  double radius = 1.0;
  // Free mode labels; for perturbed pairs the dominant basis mode.
  ModeIndex mode;
  double alpha = 0.0;
  double norm_const = 0.0;
  // True when the pair comes from a nonzero potential; then coefficients and basis are set.
  bool perturbed = false;
  Eigen::VectorXd coefficients;
  std::shared_ptr<const Basis> basis;
  // Normal derivatives of phi and of its Laplacian at the nodes of the sphere rule.
  std::vector<double> norm_trace;
  std::vector<double> lap_trace;
};

// Free pairs (l <= l_max, n <= n_max) sorted by (mu, l, m, n).
std::vector<EigenPair> navier_eigenpairs_free(double R, int l_max, int n_max);

// The `count` lowest free pairs counted with multiplicity, no level missing.
std::vector<EigenPair> lowest_free_eigenpairs(double R, int count);

double evaluate(const EigenPair &pair, const Point3 &x);

// Q x J matrix of pair values at the rule nodes.
Eigen::MatrixXd evaluate_on_rule(std::span<const EigenPair> pairs, const quad::QuadratureRule &rule);

struct Traces
{
  std::vector<double> norm_trace;
  std::vector<double> lap_trace;
};

Traces boundary_traces(const EigenPair &pair, const quad::QuadratureRule &sphere);
void attach_traces(std::span<EigenPair> pairs, const quad::QuadratureRule &sphere);

struct GalerkinOptions
{
  int min_basis_factor = 4;
  double symmetry_tolerance = 1e-10;
};

// Lowest `count` eigenpairs of diag(lambda) + G, G_jk = int V phi_j phi_k, with G
// assembled on `rule`, which must be a ball rule covering the support of V.
std::vector<EigenPair> navier_eigenpairs_perturbed(const PotentialSpec &V, double R,
                                                   std::span<const EigenPair> basis, int count,
                                                   const quad::QuadratureRule &rule,
                                                   const GalerkinOptions &options = {});

struct WeylFit
{
  double E1;
  double E2;
  double exponent;
};

WeylFit weyl_check(std::span<const EigenPair> pairs);
WeylFit weyl_check(std::span<const double> mu);

struct TraceRow
{
  int index;
  double kappa;
  double norm_ratio;
  double lap_ratio;
};

struct TraceGrowth
{
  std::vector<TraceRow> rows;
  double max_norm_ratio = 0.0;
  double max_lap_ratio = 0.0;
};

// Uses the stored traces, which must live on `sphere`.
TraceGrowth trace_growth_check(std::span<const EigenPair> pairs, const quad::QuadratureRule &sphere);

}  // namespace biharm::spectral
