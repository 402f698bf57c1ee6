// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "biharm/quadrature.hpp"
#include "biharm/spectral.hpp"

namespace biharm::resolvent
{

using cplx = std::complex<double>;

enum class Region
{
  quadrant1,
  other
};

class ComplexWavenumber
{
public:
  // Throws std::invalid_argument for lambda = 0 or non-finite input.
  explicit ComplexWavenumber(cplx lambda);
  explicit ComplexWavenumber(double kappa) : ComplexWavenumber(cplx(kappa, 0.0)) {}

  cplx value() const { return lambda_; }
  // quadrant1 when 0 < arg(lambda) < pi/2.
  Region region() const;

private:
  cplx lambda_;
};

// (e^{i lambda r} - e^{-lambda r}) / (8 pi lambda^2 r), with value (1+i)/(8 pi lambda) at r = 0.
cplx free_kernel(const ComplexWavenumber &lambda, double r);

// -(e^{i lambda r} + e^{-lambda r}) / (8 pi r), r > 0.
cplx laplacian_free_kernel(const ComplexWavenumber &lambda, double r);

// Distance from lambda^4 to [0, inf).
double dist_to_spectrum(const ComplexWavenumber &lambda);

struct BoundaryDataset
{
  double kappa = 0.0;
  std::vector<cplx> u_values;
  std::vector<cplx> lap_u_values;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
};

// I + diag(V) K diag(w) on a ball grid. Rows of nodes with V = 0 are identity rows, so
// only the block on the active nodes (V != 0) is stored and factorized.
class KernelSystem
{
public:
  KernelSystem(const quad::QuadratureRule &grid, const ComplexWavenumber &lambda,
               std::vector<double> potential);

  const quad::QuadratureRule &grid() const { return grid_; }
  const ComplexWavenumber &lambda() const { return lambda_; }
  const std::vector<double> &potential() const { return potential_; }
  const std::vector<std::size_t> &active() const { return active_; }
  bool is_identity() const { return active_.empty(); }

  // Full N x N matrix; meant for small grids.
  Eigen::MatrixXcd dense() const;
  std::vector<cplx> apply(std::span<const cplx> x) const;

  // Reciprocal-condition based estimate (1-norm) of the active block; 1 for the identity.
  double condition_estimate() const { return condition_; }
  std::vector<cplx> solve(std::span<const cplx> rhs) const;

private:
  quad::QuadratureRule grid_;
  ComplexWavenumber lambda_;
  std::vector<double> potential_;
  std::vector<std::size_t> active_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 1.0;
};

struct ForwardOptions
{
  bool interior = false;
  double max_condition = 1e12;
  // Potential support must satisfy supp V within |x| <= support_margin * R.
  double support_margin = 0.9;
};

struct ForwardResult
{
  BoundaryDataset data;
  // Density w solving (I + V K W) w = f.
  std::vector<cplx> density;
  // u at the grid nodes when requested.
  std::vector<cplx> interior;
  double condition = 1.0;
};

ForwardResult solve_forward(std::span<const double> f_samples, const spectral::PotentialSpec &V,
                            const ComplexWavenumber &lambda, const quad::QuadratureRule &grid,
                            const quad::QuadratureRule &sphere, const ForwardOptions &options = {});

// u(x) = sum_q K(x, y_q) w_q density_q at arbitrary points.
std::vector<cplx> evaluate_field(const quad::QuadratureRule &grid, std::span<const cplx> density,
                                 const ComplexWavenumber &lambda, std::span<const Point3> points);

// Frobenius norm of W^{1/2} K W^{1/2} on the grid.
double hs_norm_estimate(const ComplexWavenumber &lambda, double R, const quad::QuadratureRule &grid);

// |lambda|^-2 (e^{2R(Im lambda)_-} + e^{2R(Re lambda)_-}).
double hs_bound_shape(const ComplexWavenumber &lambda, double R);

// Largest singular value of W^{1/2} diag(V) K W^{1/2} on the grid (power iteration).
double weighted_operator_norm(std::span<const double> potential, const ComplexWavenumber &lambda,
                              const quad::QuadratureRule &grid);

struct OmegaDelta
{
  double A = 0.0;
  double C0 = 1.0;
  double delta = 0.1;

  bool contains(cplx lambda) const;
};

struct ResonanceSample
{
  cplx lambda;
  double hs_estimate;
  double vr0_norm;
  bool in_omega_delta;
  bool bound_satisfied;
};

// grid covers B_R (for the HS estimate), support_grid covers supp V.
std::vector<ResonanceSample> resonance_region_check(const spectral::PotentialSpec &V,
                                                    std::span<const cplx> lambda_samples, double R,
                                                    const OmegaDelta &omega,
                                                    const quad::QuadratureRule &grid,
                                                    const quad::QuadratureRule &support_grid);

// Exact boundary data for V = 0 and f = sum_j t_j phi_j over free pairs, from the
// separable expansion of the kernel and Lommel integrals. No volume quadrature.
BoundaryDataset free_boundary_data_analytic(std::span<const spectral::EigenPair> pairs,
                                            std::span<const double> coefficients, double kappa,
                                            const quad::QuadratureRule &sphere);

}  // namespace biharm::resolvent
