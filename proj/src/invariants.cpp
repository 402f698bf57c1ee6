// SPDX-License-Identifier: Apache-2.0

#include "biharm/invariants.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "biharm/experiment.hpp"
#include "biharm/noise.hpp"
#include "biharm/specfun.hpp"

namespace biharm::harness
{

namespace
{

using resolvent::cplx;
constexpr double pi = std::numbers::pi;

struct Outcome
{
  bool passed;
  std::string detail;
};

std::string worst(const char *what, double value, double tol)
{
  std::ostringstream os;
  os.precision(3);
  os << what << ' ' << value << " (tol " << tol << ')';
  return os.str();
}

Outcome bessel_zeros()
{
  double residual = 0.0;
  for (int l = 0; l <= 5; ++l)
  {
    for (int n = 1; n <= 20; ++n)
    {
      const double a = specfun::bessel_zero(l, n).alpha;
      if (!(a < specfun::bessel_zero(l + 1, n).alpha &&
            specfun::bessel_zero(l + 1, n).alpha < specfun::bessel_zero(l, n + 1).alpha))
      {
        return {false, "interlacing fails at l=" + std::to_string(l) + " n=" + std::to_string(n)};
      }
      residual = std::max(residual, std::abs(specfun::spherical_bessel_j(l, a)));
    }
  }
  return {residual <= 1e-12, worst("max |j_l(alpha)|", residual, 1e-12)};
}

Outcome gauss_weights()
{
  double err = 0.0;
  for (int n = 1; n <= 64; ++n)
  {
    double sum = 0.0;
    for (const auto &g : specfun::gauss_legendre(n))
    {
      if (!(g.weight > 0.0))
      {
        return {false, "nonpositive weight at n=" + std::to_string(n)};
      }
      sum += g.weight;
    }
    err = std::max(err, std::abs(sum - 2.0));
  }
  return {err <= 1e-14, worst("max |sum w - 2|", err, 1e-14)};
}

Outcome harmonic_addition()
{
  constexpr int lmax = 8;
  noise::SplitMix64 rng(7);
  std::vector<double> y(static_cast<std::size_t>((lmax + 1) * (lmax + 1)));
  double err = 0.0;
  for (int k = 0; k < 100; ++k)
  {
    const double theta = std::acos(2.0 * rng.uniform() - 1.0);
    const double phi = 2.0 * pi * rng.uniform();
    specfun::real_spherical_harmonics_all(lmax, theta, phi, y);
    for (int l = 0; l <= lmax; ++l)
    {
      double s = 0.0;
      for (int m = -l; m <= l; ++m)
      {
        const double v = y[static_cast<std::size_t>(specfun::harmonic_index(l, m))];
        s += v * v;
      }
      err = std::max(err, std::abs(s - (2 * l + 1) / (4 * pi)));
    }
  }
  return {err <= 1e-10, worst("max addition error", err, 1e-10)};
}

Outcome rule_weights(const quad::QuadratureRule &rule)
{
  const double R = rule.radius;
  const double exact =
      rule.kind == quad::RuleKind::sphere ? 4 * pi * R * R : 4 * pi * R * R * R / 3;
  double sum = 0.0;
  for (double w : rule.weights)
  {
    if (!(w > 0.0))
    {
      return {false, "nonpositive weight"};
    }
    sum += w;
  }
  if (rule.kind == quad::RuleKind::sphere)
  {
    for (const auto &x : rule.nodes)
    {
      if (std::abs(std::hypot(x[0], x[1], x[2]) - R) > 1e-14 * std::max(1.0, R))
      {
        return {false, "sphere node off the sphere"};
      }
    }
  }
  const double rel = std::abs(sum - exact) / exact;
  return {rel <= 1e-12, worst("relative weight-sum error", rel, 1e-12)};
}

Outcome kappa_mu(const std::vector<spectral::EigenPair> &pairs)
{
  double err = 0.0;
  for (const auto &p : pairs)
  {
    err = std::max(err, std::abs(std::pow(p.kappa, 4) - p.mu) / p.mu);
  }
  return {err <= 1e-12, worst("max |kappa^4 - mu| / mu", err, 1e-12)};
}

Outcome gram(const std::vector<spectral::EigenPair> &pairs, const quad::QuadratureRule &grid,
             double tol)
{
  const Eigen::MatrixXd phi = spectral::evaluate_on_rule(pairs, grid);
  const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(),
                                            static_cast<Eigen::Index>(grid.size()));
  const Eigen::MatrixXd G = phi.transpose() * w.asDiagonal() * phi;
  double err = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i)
  {
    for (Eigen::Index j = 0; j < G.cols(); ++j)
    {
      err = std::max(err, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
    }
  }
  return {err <= tol, worst("max Gram deviation", err, tol)};
}

Outcome trace_relation(const ExperimentConfig &config)
{
  auto pairs = free_pairs(config, config.basis.modes);
  const auto &q = config.quadrature;
  spectral::attach_traces(pairs, quad::sphere_rule(config.R, q.sphere_n_theta, q.sphere_n_phi));
  for (const auto &p : pairs)
  {
    const double k2 = p.kappa * p.kappa;
    for (std::size_t i = 0; i < p.norm_trace.size(); ++i)
    {
      if (p.lap_trace[i] != -k2 * p.norm_trace[i])
      {
        return {false, "lap_trace != -kappa^2 norm_trace"};
      }
    }
  }
  return {true, std::to_string(pairs.size()) + " free pairs, exact"};
}

Outcome multiplicity(const ExperimentConfig &config)
{
  std::map<std::pair<int, int>, int> count;
  for (const auto &p : spectral::navier_eigenpairs_free(config.R, config.basis.l_max,
                                                        config.basis.n_max))
  {
    ++count[{p.mode.l, p.mode.n}];
  }
  for (const auto &[ln, c] : count)
  {
    if (c != 2 * ln.first + 1)
    {
      return {false, "level l=" + std::to_string(ln.first) + " n=" + std::to_string(ln.second) +
                         " has " + std::to_string(c) + " modes"};
    }
  }
  return {true, std::to_string(count.size()) + " levels"};
}

Outcome potential_samples(const ExperimentConfig &config, const quad::QuadratureRule &grid)
{
  const auto &V = config.potential;
  const auto v = spectral::sample_potential(V, grid);
  const double supp = V.is_zero() ? 0.0 : V.support(config.R);
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (!std::isfinite(v[i]) || v[i] < 0.0)
    {
      return {false, "negative or non-finite sample"};
    }
    if (v[i] != 0.0 && grid.coords[i].r >= supp)
    {
      return {false, "nonzero sample outside the support"};
    }
  }
  return {true, std::to_string(v.size()) + " samples"};
}

Outcome kernel_identity()
{
  const auto grid = quad::ball_rule(1.0, 3, 2, 4);
  const resolvent::KernelSystem sys(grid, resolvent::ComplexWavenumber(2.0),
                                    std::vector<double>(grid.size(), 0.0));
  const Eigen::MatrixXcd M = sys.dense();
  const bool ok = sys.is_identity() && M == Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  return {ok, ok ? "exact identity" : "V = 0 system is not the identity"};
}

Outcome kernel_singularity()
{
  // K(lambda, r) = (1+i)/(8 pi lambda) - r/(8 pi) + O(r^2).
  const double C = 1.0 / (4 * pi);
  double ratio = 0.0;
  for (cplx l : {cplx(1.0, 0.0), cplx(2.0, 1.0), cplx(0.0, 0.5)})
  {
    const resolvent::ComplexWavenumber lam(l);
    const cplx k0 = cplx(1.0, 1.0) / (8 * pi * l);
    for (double r : {1e-3, 1e-4, 1e-5})
    {
      ratio = std::max(ratio, std::abs(resolvent::free_kernel(lam, r) - k0) / (C * r));
    }
  }
  return {ratio <= 1.0, worst("max |K - K(0)| / (C r)", ratio, 1.0)};
}

Outcome spectral_bound()
{
  noise::SplitMix64 rng(11);
  double worst_ratio = 0.0;
  for (int k = 0; k < 100; ++k)
  {
    const cplx lam = std::polar(0.1 + 9.9 * rng.uniform(), 1e-6 + (pi / 2 - 2e-6) * rng.uniform());
    const double lhs = std::norm(lam) * lam.imag() * lam.real();
    worst_ratio =
        std::max(worst_ratio, lhs / resolvent::dist_to_spectrum(resolvent::ComplexWavenumber(lam)));
  }
  return {worst_ratio <= 1.0 + 1e-12, worst("max |l|^2 Im Re / dist", worst_ratio, 1.0)};
}

Outcome recovery_identity(const ExperimentConfig &config)
{
  const int count = std::min(config.basis.modes, 10);
  const auto &q = config.quadrature;
  const auto sphere = quad::sphere_rule(config.R, q.sphere_n_theta, q.sphere_n_phi);
  auto pairs = free_pairs(config, count);
  spectral::attach_traces(pairs, sphere);
  double err = 0.0;
  double form_gap = 0.0;
  for (int k = 0; k < count; ++k)
  {
    std::vector<double> t(static_cast<std::size_t>(count), 0.0);
    t[static_cast<std::size_t>(k)] = 1.0;
    for (int j = 0; j < count; ++j)
    {
      const auto &p = pairs[static_cast<std::size_t>(j)];
      const auto data = resolvent::free_boundary_data_analytic(pairs, t, p.kappa, sphere);
      const double a = inverse::recover_coefficient(data, p, sphere);
      const double b = inverse::recover_coefficient_free_form(data, p, sphere);
      err = std::max(err, std::abs(a - (j == k ? 1.0 : 0.0)));
      form_gap = std::max(form_gap, std::abs(a - b));
    }
  }
  if (form_gap > 1e-12)
  {
    return {false, worst("formula disagreement", form_gap, 1e-12)};
  }
  return {err <= 1e-9, worst("max unit-vector error", err, 1e-9)};
}

Outcome round_trip(const ExperimentConfig &config)
{
  const bool ok = config_from_json(nlohmann::json::parse(to_json(config).dump())) == config;
  return {ok, ok ? "lossless" : "config changed after serialization"};
}

Outcome noise_reproducible()
{
  resolvent::BoundaryDataset d;
  d.kappa = 1.0;
  d.u_values.assign(16, cplx(1.0, -2.0));
  d.lap_u_values.assign(16, cplx(0.5, 3.0));
  auto a = d;
  auto b = d;
  noise::add_noise(a, 1e-2, 42);
  noise::add_noise(b, 1e-2, 42);
  const bool ok = a.u_values == b.u_values && a.lap_u_values == b.lap_u_values &&
                  a.u_values != d.u_values;
  return {ok, ok ? "bit-identical" : "noise differs between identical seeds"};
}

Outcome continuation_params()
{
  inverse::ContinuationParams{}.validate();
  return {true, "default parameters consistent"};
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(const ExperimentConfig &config)
{
  validate(config);
  const auto &q = config.quadrature;
  const auto grid = quad::ball_rule(config.R, q.n_r, q.n_theta, q.n_phi);
  const auto sphere = quad::sphere_rule(config.R, q.sphere_n_theta, q.sphere_n_phi);

  std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
      {"bessel_zero_interlacing", bessel_zeros},
      {"gauss_legendre_weights", gauss_weights},
      {"harmonic_addition", harmonic_addition},
      {"ball_rule_weights", [&] { return rule_weights(grid); }},
      {"sphere_rule_weights", [&] { return rule_weights(sphere); }},
      {"level_multiplicity", [&] { return multiplicity(config); }},
      {"free_orthonormality",
       [&] {
         return gram(spectral::lowest_free_eigenpairs(config.R, std::min(30, config.basis.modes)),
                     grid, 1e-8);
       }},
      {"free_trace_relation", [&] { return trace_relation(config); }},
      {"potential_samples", [&] { return potential_samples(config, grid); }},
      {"kernel_identity", kernel_identity},
      {"kernel_removable_singularity", kernel_singularity},
      {"spectral_bound", spectral_bound},
      {"recovery_identity", [&] { return recovery_identity(config); }},
      {"noise_reproducible", noise_reproducible},
      {"continuation_params", continuation_params},
      {"config_round_trip", [&] { return round_trip(config); }},
  };
  if (!config.potential.is_zero())
  {
    checks.emplace_back("perturbed_pairs", [&] {
      const auto setup = build_setup(config);
      const auto k = kappa_mu(setup.pairs);
      if (!k.passed)
      {
        return k;
      }
      return gram(setup.pairs, grid, 1e-8);
    });
  }
  else
  {
    checks.emplace_back("free_pairs_kappa", [&] {
      return kappa_mu(free_pairs(config, config.basis.modes));
    });
  }

  std::vector<InvariantResult> out;
  for (const auto &[name, check] : checks)
  {
    InvariantResult r{name, false, ""};
    try
    {
      const auto o = check();
      r.passed = o.passed;
      r.detail = o.detail;
    }
    catch (const std::exception &e)
    {
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace biharm::harness
