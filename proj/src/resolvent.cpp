// SPDX-License-Identifier: Apache-2.0

#include "biharm/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"
#include "biharm/specfun.hpp"

namespace biharm::resolvent
{

using quad::QuadratureRule;
using quad::RuleKind;

namespace
{

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);

// Kernel with the per-lambda constants hoisted out of the assembly loops.
struct Kernel
{
  cplx lam;
  cplx pref;  // 1 / (8 pi lambda^2)
  cplx diag;  // (1 + i) / (8 pi lambda)
  bool real;
  double k;

  explicit Kernel(const ComplexWavenumber &w)
    : lam(w.value()),
      pref(1.0 / (8.0 * kPi * lam * lam)),
      diag(cplx(1.0, 1.0) / (8.0 * kPi * lam)),
      real(lam.imag() == 0.0),
      k(lam.real())
  {
  }

  cplx value(double r) const
  {
    if (r == 0.0)
    {
      return diag;
    }
    const cplx z = lam * r;
    if (std::abs(z) < 1e-3)
    {
      // lambda * sum_k (i^k - (-1)^k) z^{k-1} / k!
      const cplx z2 = z * z;
      const cplx s = cplx(1.0, 1.0) - z + cplx(1.0, -1.0) * z2 / 6.0 +
                     cplx(1.0, 1.0) * z2 * z2 / 120.0 - z2 * z2 * z / 360.0 +
                     cplx(1.0, -1.0) * z2 * z2 * z2 / 5040.0;
      return lam * s * pref;
    }
    if (real)
    {
      const double kr = k * r;
      return cplx((std::cos(kr) - std::exp(-kr)) / r, std::sin(kr) / r) * pref;
    }
    return (std::exp(kI * z) - std::exp(-z)) / r * pref;
  }

  cplx laplacian(double r) const
  {
    if (real)
    {
      const double kr = k * r;
      return cplx(-(std::cos(kr) + std::exp(-kr)), -std::sin(kr)) / (8.0 * kPi * r);
    }
    const cplx z = lam * r;
    return -(std::exp(kI * z) + std::exp(-z)) / (8.0 * kPi * r);
  }
};

double distance(const Point3 &a, const Point3 &b)
{
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void require_ball(const QuadratureRule &grid, const char *who)
{
  if (grid.kind != RuleKind::ball)
  {
    throw std::invalid_argument(std::string(who) + ": grid must be a ball rule");
  }
}

const std::vector<specfun::GaussNode> &gauss_cache(int n)
{
  static std::mutex mu;
  static std::map<int, std::vector<specfun::GaussNode>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
  {
    it = cache.emplace(n, specfun::gauss_legendre(n)).first;
  }
  return it->second;
}

// Per-shell spherical-harmonic moments of w * density on a ball product rule:
// coef[i][lm] = sum over shell i of w_q density_q Y_lm(y_q).
struct ShellExpansion
{
  int lmax = 0;
  std::vector<double> radii;
  std::vector<cplx> coef;
  std::size_t nh() const { return static_cast<std::size_t>((lmax + 1) * (lmax + 1)); }
};

ShellExpansion expand(const QuadratureRule &grid, std::span<const cplx> density)
{
  ShellExpansion ex;
  ex.lmax = std::max(0, std::min(grid.n_theta - 1, (grid.n_phi - 1) / 2));
  const std::size_t shell = static_cast<std::size_t>(grid.n_theta) * grid.n_phi;
  const std::size_t nh = ex.nh();
  ex.radii.resize(static_cast<std::size_t>(grid.n_r));
  ex.coef.assign(ex.radii.size() * nh, 0.0);
  std::vector<double> Y(nh);
  for (std::size_t q = 0; q < grid.size(); ++q)
  {
    const std::size_t i = q / shell;
    ex.radii[i] = grid.coords[q].r;
    if (density[q] == 0.0)
    {
      continue;
    }
    specfun::real_spherical_harmonics_all(ex.lmax, grid.coords[q].theta, grid.coords[q].phi, Y);
    const cplx wd = grid.weights[q] * density[q];
    for (std::size_t h = 0; h < nh; ++h)
    {
      ex.coef[i * nh + h] += wd * Y[h];
    }
  }
  return ex;
}

// Funk-Hecke weights k_l = 2 pi int_{-1}^{1} G(|x - s w|) P_l(c) dc for |x| = rx, written
// as an integral in t = |x - s w| so that the integrand t * G(t) is smooth.
void radial_weights(const Kernel &K, bool lap, double rx, double s, int lmax, cplx *out)
{
  auto tg = [&](double t) -> cplx {
    const cplx a = std::exp(kI * K.lam * t), b = std::exp(-K.lam * t);
    return lap ? -(a + b) / (8.0 * kPi) : K.pref * (a - b);
  };
  std::fill(out, out + lmax + 1, cplx(0.0));
  if (rx == 0.0)
  {
    out[0] = 4.0 * kPi * tg(s) / s;
    return;
  }
  const double lo = std::abs(rx - s), hi = rx + s;
  const int n = std::min(specfun::kMaxGaussPoints,
                         24 + 2 * lmax + static_cast<int>(std::abs(K.lam) * (hi - lo)));
  const auto &gl = gauss_cache(n);
  const double h = 0.5 * (hi - lo), c0 = 0.5 * (hi + lo);
  for (const auto &g : gl)
  {
    const double t = c0 + h * g.node;
    const double c = std::clamp((rx * rx + s * s - t * t) / (2.0 * rx * s), -1.0, 1.0);
    const cplx v = g.weight * h * tg(t);
    double p0 = 1.0, p1 = c;
    out[0] += v;
    if (lmax >= 1)
    {
      out[1] += v * c;
    }
    for (int l = 2; l <= lmax; ++l)
    {
      const double p2 = ((2 * l - 1) * c * p1 - (l - 1) * p0) / l;
      out[l] += v * p2;
      p0 = p1;
      p1 = p2;
    }
  }
  const double scale = 2.0 * kPi / (rx * s);
  for (int l = 0; l <= lmax; ++l)
  {
    out[l] *= scale;
  }
}

// u (or Delta u) at the points from the shell expansion of the density.
std::vector<cplx> expansion_field(const ShellExpansion &ex, const Kernel &K, bool lap,
                                  std::span<const Point3> points)
{
  const std::size_t nh = ex.nh(), ns = ex.radii.size(), nl = static_cast<std::size_t>(ex.lmax) + 1;
  std::vector<cplx> out(points.size());
  parallel_for(points.size(), [&](std::size_t b, std::size_t e) {
    std::vector<double> Y(nh);
    std::vector<cplx> kl(ns * nl);
    double last = -1.0;
    for (std::size_t p = b; p < e; ++p)
    {
      const auto &x = points[p];
      const double rx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
      if (rx != last)
      {
        for (std::size_t i = 0; i < ns; ++i)
        {
          radial_weights(K, lap, rx, ex.radii[i], ex.lmax, &kl[i * nl]);
        }
        last = rx;
      }
      const double theta = rx > 0.0 ? std::acos(std::clamp(x[2] / rx, -1.0, 1.0)) : 0.0;
      specfun::real_spherical_harmonics_all(ex.lmax, theta, std::atan2(x[1], x[0]), Y);
      cplx u = 0.0;
      for (std::size_t i = 0; i < ns; ++i)
      {
        const cplx *c = &ex.coef[i * nh];
        for (int l = 0; l <= ex.lmax; ++l)
        {
          cplx acc = 0.0;
          for (int m = -l; m <= l; ++m)
          {
            const auto h = static_cast<std::size_t>(specfun::harmonic_index(l, m));
            acc += c[h] * Y[h];
          }
          u += kl[i * nl + static_cast<std::size_t>(l)] * acc;
        }
      }
      out[p] = u;
    }
  });
  return out;
}

}  // namespace

ComplexWavenumber::ComplexWavenumber(cplx lambda) : lambda_(lambda)
{
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
  {
    throw std::invalid_argument("wavenumber must be finite");
  }
  if (lambda == cplx(0.0, 0.0))
  {
    throw std::invalid_argument("wavenumber lambda = 0 is the pole of the free resolvent");
  }
}

Region ComplexWavenumber::region() const
{
  return (lambda_.real() > 0.0 && lambda_.imag() > 0.0) ? Region::quadrant1 : Region::other;
}

cplx free_kernel(const ComplexWavenumber &lambda, double r)
{
  if (!(r >= 0.0) || !std::isfinite(r))
  {
    throw std::invalid_argument("free_kernel: r must be finite and >= 0");
  }
  return Kernel(lambda).value(r);
}

cplx laplacian_free_kernel(const ComplexWavenumber &lambda, double r)
{
  if (!(r > 0.0) || !std::isfinite(r))
  {
    throw std::invalid_argument("laplacian_free_kernel: r must be finite and > 0");
  }
  return Kernel(lambda).laplacian(r);
}

double dist_to_spectrum(const ComplexWavenumber &lambda)
{
  const double a = lambda.value().real(), b = lambda.value().imag();
  const double a2 = a * a, b2 = b * b;
  if (a2 * a2 + b2 * b2 >= 6.0 * a2 * b2)
  {
    return 4.0 * std::abs(a * b) * std::abs(a2 - b2);
  }
  const double m2 = a2 + b2;
  return m2 * m2;
}

KernelSystem::KernelSystem(const QuadratureRule &grid, const ComplexWavenumber &lambda,
                           std::vector<double> potential)
  : grid_(grid), lambda_(lambda), potential_(std::move(potential))
{
  require_ball(grid_, "KernelSystem");
  if (potential_.size() != grid_.size())
  {
    throw std::invalid_argument("KernelSystem: potential sample count differs from grid size");
  }
  for (std::size_t i = 0; i < potential_.size(); ++i)
  {
    if (!std::isfinite(potential_[i]))
    {
      throw std::invalid_argument("KernelSystem: potential samples must be finite");
    }
    if (potential_[i] != 0.0)
    {
      active_.push_back(i);
    }
  }
  if (active_.empty())
  {
    return;
  }
  const Kernel K(lambda_);
  const auto n = static_cast<Eigen::Index>(active_.size());
  Eigen::MatrixXcd A(n, n);
  parallel_for(active_.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t a = b; a < e; ++a)
    {
      const std::size_t i = active_[a];
      const double vi = potential_[i];
      for (Eigen::Index c = 0; c < n; ++c)
      {
        const std::size_t j = active_[c];
        A(static_cast<Eigen::Index>(a), c) =
            vi * K.value(distance(grid_.nodes[i], grid_.nodes[j])) * grid_.weights[j];
      }
      A(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) += 1.0;
    }
  });
  lu_.compute(A);
  const double rc = lu_.rcond();
  condition_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd KernelSystem::dense() const
{
  const auto N = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
  if (active_.empty())
  {
    return M;
  }
  const Kernel K(lambda_);
  for (std::size_t i : active_)
  {
    for (Eigen::Index j = 0; j < N; ++j)
    {
      M(static_cast<Eigen::Index>(i), j) +=
          potential_[i] * K.value(distance(grid_.nodes[i], grid_.nodes[j])) * grid_.weights[j];
    }
  }
  return M;
}

std::vector<cplx> KernelSystem::apply(std::span<const cplx> x) const
{
  if (x.size() != grid_.size())
  {
    throw std::invalid_argument("KernelSystem::apply: size mismatch");
  }
  std::vector<cplx> y(x.begin(), x.end());
  const Kernel K(lambda_);
  parallel_for(active_.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t a = b; a < e; ++a)
    {
      const std::size_t i = active_[a];
      cplx s = 0.0;
      for (std::size_t j = 0; j < grid_.size(); ++j)
      {
        s += K.value(distance(grid_.nodes[i], grid_.nodes[j])) * grid_.weights[j] * x[j];
      }
      y[i] += potential_[i] * s;
    }
  });
  return y;
}

std::vector<cplx> KernelSystem::solve(std::span<const cplx> rhs) const
{
  if (rhs.size() != grid_.size())
  {
    throw std::invalid_argument("KernelSystem::solve: size mismatch");
  }
  std::vector<cplx> out(rhs.begin(), rhs.end());
  if (active_.empty())
  {
    return out;
  }
  // Inactive unknowns equal the right-hand side; move their coupling to the active rows.
  std::vector<char> is_active(grid_.size(), 0);
  for (std::size_t i : active_)
  {
    is_active[i] = 1;
  }
  const Kernel K(lambda_);
  const auto n = static_cast<Eigen::Index>(active_.size());
  Eigen::VectorXcd b(n);
  parallel_for(active_.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t a = lo; a < hi; ++a)
    {
      const std::size_t i = active_[a];
      cplx s = 0.0;
      for (std::size_t j = 0; j < grid_.size(); ++j)
      {
        if (!is_active[j] && rhs[j] != 0.0)
        {
          s += K.value(distance(grid_.nodes[i], grid_.nodes[j])) * grid_.weights[j] * rhs[j];
        }
      }
      b[static_cast<Eigen::Index>(a)] = rhs[i] - potential_[i] * s;
    }
  });
  const Eigen::VectorXcd x = lu_.solve(b);
  for (Eigen::Index a = 0; a < n; ++a)
  {
    out[active_[static_cast<std::size_t>(a)]] = x[a];
  }
  return out;
}

ForwardResult solve_forward(std::span<const double> f_samples, const spectral::PotentialSpec &V,
                            const ComplexWavenumber &lambda, const QuadratureRule &grid,
                            const QuadratureRule &sphere, const ForwardOptions &options)
{
  require_ball(grid, "solve_forward");
  if (sphere.kind != RuleKind::sphere)
  {
    throw std::invalid_argument("solve_forward: boundary rule must be a sphere rule");
  }
  const double R = sphere.radius;
  if (grid.radius > R * (1.0 + 1e-12))
  {
    throw std::invalid_argument("solve_forward: volume grid extends beyond the data sphere");
  }
  if (f_samples.size() != grid.size())
  {
    throw std::invalid_argument("solve_forward: source sample count differs from grid size");
  }
  for (double v : f_samples)
  {
    if (!std::isfinite(v))
    {
      throw std::invalid_argument("solve_forward: source samples must be finite");
    }
  }
  V.validate(R);
  if (!V.is_zero())
  {
    const double s = V.support(R);
    if (s > options.support_margin * R * (1.0 + 1e-12))
    {
      throw std::invalid_argument("solve_forward: potential support exceeds the interior margin");
    }
    if (s > grid.radius * (1.0 + 1e-12))
    {
      throw std::invalid_argument("solve_forward: potential support not covered by the grid");
    }
  }

  ForwardResult res;
  res.data.kappa = lambda.value().real();
  res.density.assign(f_samples.begin(), f_samples.end());
  if (!V.is_zero())
  {
    KernelSystem sys(grid, lambda, spectral::sample_potential(V, grid));
    res.condition = sys.condition_estimate();
    if (!(res.condition <= options.max_condition))
    {
      throw NearResonanceError("solve_forward: condition estimate " +
                                   std::to_string(res.condition) + " at lambda = (" +
                                   std::to_string(lambda.value().real()) + ", " +
                                   std::to_string(lambda.value().imag()) + ")",
                               res.condition);
    }
    res.density = sys.solve(res.density);
  }

  const Kernel K(lambda);
  const auto ex = expand(grid, res.density);
  res.data.u_values = expansion_field(ex, K, false, sphere.nodes);
  res.data.lap_u_values = expansion_field(ex, K, true, sphere.nodes);
  if (options.interior)
  {
    res.interior = expansion_field(ex, K, false, grid.nodes);
  }
  return res;
}

std::vector<cplx> evaluate_field(const QuadratureRule &grid, std::span<const cplx> density,
                                 const ComplexWavenumber &lambda, std::span<const Point3> points)
{
  if (density.size() != grid.size())
  {
    throw std::invalid_argument("evaluate_field: density size differs from grid size");
  }
  require_ball(grid, "evaluate_field");
  return expansion_field(expand(grid, density), Kernel(lambda), false, points);
}

double hs_norm_estimate(const ComplexWavenumber &lambda, double R, const QuadratureRule &grid)
{
  require_ball(grid, "hs_norm_estimate");
  if (grid.radius < R * (1.0 - 1e-12))
  {
    throw std::invalid_argument("hs_norm_estimate: grid does not cover B_R");
  }
  const Kernel K(lambda);
  std::vector<double> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
    {
      double s = 0.0;
      for (std::size_t j = 0; j < grid.size(); ++j)
      {
        s += grid.weights[j] * std::norm(K.value(distance(grid.nodes[i], grid.nodes[j])));
      }
      rows[i] = grid.weights[i] * s;
    }
  });
  double total = 0.0;
  for (double v : rows)
  {
    total += v;
  }
  return std::sqrt(total);
}

double hs_bound_shape(const ComplexWavenumber &lambda, double R)
{
  const cplx l = lambda.value();
  const double im_minus = std::max(0.0, -l.imag());
  const double re_minus = std::max(0.0, -l.real());
  return (std::exp(2.0 * R * im_minus) + std::exp(2.0 * R * re_minus)) / std::norm(l);
}

double weighted_operator_norm(std::span<const double> potential, const ComplexWavenumber &lambda,
                              const QuadratureRule &grid)
{
  require_ball(grid, "weighted_operator_norm");
  if (potential.size() != grid.size())
  {
    throw std::invalid_argument("weighted_operator_norm: potential size differs from grid size");
  }
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    if (potential[i] != 0.0)
    {
      rows.push_back(i);
    }
  }
  if (rows.empty())
  {
    return 0.0;
  }
  const Kernel K(lambda);
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd B(m, n);
  parallel_for(rows.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t a = b; a < e; ++a)
    {
      const std::size_t i = rows[a];
      const double si = std::sqrt(grid.weights[i]) * potential[i];
      for (Eigen::Index j = 0; j < n; ++j)
      {
        B(static_cast<Eigen::Index>(a), j) =
            si * K.value(distance(grid.nodes[i], grid.nodes[static_cast<std::size_t>(j)])) *
            std::sqrt(grid.weights[static_cast<std::size_t>(j)]);
      }
    }
  });

  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n) / std::sqrt(static_cast<double>(n));
  double sigma = 0.0;
  for (int it = 0; it < 2000; ++it)
  {
    const Eigen::VectorXcd u = B * v;
    const double next = u.norm();
    if (next == 0.0)
    {
      return 0.0;
    }
    v = B.adjoint() * u;
    v /= v.norm();
    if (std::abs(next - sigma) <= 1e-12 * next)
    {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

bool OmegaDelta::contains(cplx lambda) const
{
  const double mod = std::abs(lambda);
  const double floor = -A - delta * std::log1p(mod);
  return mod >= C0 && lambda.imag() >= floor && lambda.real() >= floor;
}

std::vector<ResonanceSample> resonance_region_check(const spectral::PotentialSpec &V,
                                                    std::span<const cplx> lambda_samples, double R,
                                                    const OmegaDelta &omega,
                                                    const QuadratureRule &grid,
                                                    const QuadratureRule &support_grid)
{
  if (!(omega.delta > 0.0 && omega.delta < 1.0 / (2.0 * R)))
  {
    throw std::invalid_argument("resonance_region_check: delta must lie in (0, 1/(2R))");
  }
  V.validate(R);
  const auto v = spectral::sample_potential(V, support_grid);
  std::vector<ResonanceSample> out;
  out.reserve(lambda_samples.size());
  for (const cplx lam : lambda_samples)
  {
    ResonanceSample s{lam, std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(), false, false};
    if (lam != cplx(0.0, 0.0))
    {
      const ComplexWavenumber w(lam);
      s.hs_estimate = hs_norm_estimate(w, R, grid);
      s.vr0_norm = V.is_zero() ? 0.0 : weighted_operator_norm(v, w, support_grid);
      s.in_omega_delta = omega.contains(lam);
      s.bound_satisfied = s.vr0_norm <= 0.5;
    }
    out.push_back(s);
  }
  return out;
}

BoundaryDataset free_boundary_data_analytic(std::span<const spectral::EigenPair> pairs,
                                            std::span<const double> coefficients, double kappa,
                                            const QuadratureRule &sphere)
{
  if (pairs.size() != coefficients.size())
  {
    throw std::invalid_argument("free_boundary_data_analytic: coefficient count mismatch");
  }
  if (sphere.kind != RuleKind::sphere)
  {
    throw std::invalid_argument("free_boundary_data_analytic: rule must be a sphere rule");
  }
  if (!(kappa > 0.0))
  {
    throw std::invalid_argument("free_boundary_data_analytic: kappa must be positive");
  }
  const double R = sphere.radius;
  int lmax = 0;
  for (const auto &p : pairs)
  {
    if (p.perturbed || p.norm_const == 0.0)
    {
      throw std::invalid_argument("free_boundary_data_analytic: free pairs only");
    }
    if (std::abs(p.radius - R) > 1e-12 * R)
    {
      throw std::invalid_argument("free_boundary_data_analytic: radius mismatch");
    }
    lmax = std::max(lmax, p.mode.l);
  }

  // Angular-independent factors for u and Delta u per mode.
  const double kr = kappa * R;
  std::vector<cplx> fu(pairs.size()), flap(pairs.size());
  for (std::size_t j = 0; j < pairs.size(); ++j)
  {
    const auto &p = pairs[j];
    if (coefficients[j] == 0.0)
    {
      continue;
    }
    const int l = p.mode.l;
    const double b = p.alpha / R;
    const double c = p.norm_const;
    const double djb = specfun::spherical_bessel_j_derivative(l, p.alpha);
    double ij;
    if (std::abs(kappa - b) <= 1e-10 * b)
    {
      ij = 0.5 * c * R * R * R * djb * djb;
    }
    else
    {
      ij = c * R * R * b * specfun::spherical_bessel_j(l, kr) * djb / (kappa * kappa - b * b);
    }
    const double ii =
        -c * R * R * b * specfun::modified_spherical_bessel_i(l, kr) * djb / (kappa * kappa + b * b);
    const cplx h(specfun::spherical_bessel_j(l, kr), specfun::spherical_bessel_y(l, kr));
    const cplx A = kI * kappa * h * ij;
    const double B = kappa * specfun::modified_spherical_bessel_k(l, kr) * ii;
    fu[j] = coefficients[j] * (A - B) / (2.0 * kappa * kappa);
    flap[j] = coefficients[j] * (-0.5) * (A + B);
  }

  BoundaryDataset data;
  data.kappa = kappa;
  data.u_values.assign(sphere.size(), 0.0);
  data.lap_u_values.assign(sphere.size(), 0.0);
  std::vector<double> ylm((lmax + 1) * (lmax + 1));
  for (std::size_t s = 0; s < sphere.size(); ++s)
  {
    specfun::real_spherical_harmonics_all(lmax, sphere.coords[s].theta, sphere.coords[s].phi, ylm);
    cplx u = 0.0, lu = 0.0;
    for (std::size_t j = 0; j < pairs.size(); ++j)
    {
      if (coefficients[j] == 0.0)
      {
        continue;
      }
      const double y = ylm[specfun::harmonic_index(pairs[j].mode.l, pairs[j].mode.m)];
      u += fu[j] * y;
      lu += flap[j] * y;
    }
    data.u_values[s] = u;
    data.lap_u_values[s] = lu;
  }
  return data;
}

}  // namespace biharm::resolvent
