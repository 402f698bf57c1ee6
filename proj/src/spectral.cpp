// SPDX-License-Identifier: Apache-2.0

#include "biharm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "biharm/errors.hpp"
#include "biharm/parallel.hpp"
#include "biharm/specfun.hpp"

namespace biharm::spectral
{

using quad::QuadratureRule;
using quad::RuleKind;

std::string_view to_string(PotentialKind kind)
{
  switch (kind)
  {
    case PotentialKind::none:
      return "none";
    case PotentialKind::radial_bump:
      return "radial_bump";
    case PotentialKind::constant_test:
      return "constant_test";
  }
  return "none";
}

PotentialKind potential_kind_from_string(std::string_view name)
{
  if (name == "none")
  {
    return PotentialKind::none;
  }
  if (name == "radial_bump")
  {
    return PotentialKind::radial_bump;
  }
  if (name == "constant_test")
  {
    return PotentialKind::constant_test;
  }
  throw std::invalid_argument("unknown potential kind '" + std::string(name) + "'");
}

double PotentialSpec::value(double r) const
{
  switch (kind)
  {
    case PotentialKind::none:
      return 0.0;
    case PotentialKind::radial_bump:
    {
      if (r >= support_radius)
      {
        return 0.0;
      }
      const double t = 1.0 - (r * r) / (support_radius * support_radius);
      return amplitude * (t * t) * (t * t);
    }
    case PotentialKind::constant_test:
      return amplitude;
  }
  return 0.0;
}

double PotentialSpec::support(double R) const
{
  switch (kind)
  {
    case PotentialKind::none:
      return 0.0;
    case PotentialKind::radial_bump:
      return support_radius;
    case PotentialKind::constant_test:
      return R;
  }
  return 0.0;
}

void PotentialSpec::validate(double R) const
{
  if (!std::isfinite(amplitude) || amplitude < 0.0)
  {
    throw std::invalid_argument("potential.amplitude must be finite and >= 0");
  }
  if (kind == PotentialKind::radial_bump && !(support_radius > 0.0 && support_radius < R))
  {
    throw std::invalid_argument("potential.support_radius must lie in (0, R)");
  }
}

std::vector<double> sample_potential(const PotentialSpec &V, const QuadratureRule &rule)
{
  std::vector<double> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    v[i] = V.value(rule.coords[i].r);
  }
  return v;
}

namespace
{

void check_radius(double R)
{
  if (!(R > 0.0) || !std::isfinite(R))
  {
    throw std::invalid_argument("radius must be positive and finite");
  }
}

bool mode_less(const EigenPair &a, const EigenPair &b)
{
  return std::tie(a.mu, a.mode.l, a.mode.m, a.mode.n) <
         std::tie(b.mu, b.mode.l, b.mode.m, b.mode.n);
}

void require_free(const EigenPair &p, const char *who)
{
  if (p.perturbed || p.norm_const == 0.0)
  {
    throw std::invalid_argument(std::string(who) + ": expected a free eigenpair");
  }
}

}  // namespace

std::vector<EigenPair> navier_eigenpairs_free(double R, int l_max, int n_max)
{
  check_radius(R);
  if (l_max < 0 || l_max > 30)
  {
    throw std::invalid_argument("navier_eigenpairs_free: l_max outside [0, 30]");
  }
  if (n_max < 1 || n_max > 100)
  {
    throw std::invalid_argument("navier_eigenpairs_free: n_max outside [1, 100]");
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>((l_max + 1) * (l_max + 1)) * n_max);
  for (int l = 0; l <= l_max; ++l)
  {
    const auto zeros = specfun::bessel_zeros(l, n_max);
    for (int n = 1; n <= n_max; ++n)
    {
      const double alpha = zeros[n - 1];
      const double kappa = alpha / R;
      const double c =
          std::sqrt(2.0 / (R * R * R)) / std::abs(specfun::spherical_bessel_j(l + 1, alpha));
      for (int m = -l; m <= l; ++m)
      {
        EigenPair p;
        p.kappa = kappa;
        p.mu = (kappa * kappa) * (kappa * kappa);
        p.radius = R;
        p.mode = {l, m, n};
        p.alpha = alpha;
        p.norm_const = c;
        pairs.push_back(std::move(p));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(), mode_less);
  return pairs;
}

std::vector<EigenPair> lowest_free_eigenpairs(double R, int count)
{
  check_radius(R);
  if (count < 1)
  {
    throw std::invalid_argument("lowest_free_eigenpairs: count must be >= 1");
  }
  int L = 4, Nn = 4;
  while (true)
  {
    auto pairs = navier_eigenpairs_free(R, L, Nn);
    const double limit = std::min(specfun::bessel_zero(L + 1, 1).alpha,
                                  specfun::bessel_zero(0, Nn + 1).alpha) / R;
    if (static_cast<int>(pairs.size()) >= count && pairs[count - 1].kappa < limit)
    {
      pairs.resize(count);
      return pairs;
    }
    if (L == 30 && Nn == 100)
    {
      throw std::invalid_argument("lowest_free_eigenpairs: count too large");
    }
    L = std::min(30, 2 * L);
    Nn = std::min(100, 2 * Nn);
  }
}

double evaluate(const EigenPair &pair, const Point3 &x)
{
  if (pair.perturbed)
  {
    double s = 0.0;
    for (Eigen::Index k = 0; k < pair.coefficients.size(); ++k)
    {
      if (pair.coefficients[k] != 0.0)
      {
        s += pair.coefficients[k] * evaluate((*pair.basis)[k], x);
      }
    }
    return s;
  }
  require_free(pair, "evaluate");
  const double r = std::hypot(x[0], x[1], x[2]);
  const double theta = r > 0.0 ? std::acos(std::clamp(x[2] / r, -1.0, 1.0)) : 0.0;
  const double phi = std::atan2(x[1], x[0]);
  const double y = specfun::real_spherical_harmonic(pair.mode.l, pair.mode.m, theta, phi);
  return pair.norm_const * specfun::spherical_bessel_j(pair.mode.l, pair.alpha * r / pair.radius) *
         y;
}

namespace
{

Eigen::MatrixXd evaluate_free_on_rule(std::span<const EigenPair> pairs, const QuadratureRule &rule)
{
  const std::size_t Q = rule.size();
  const Eigen::Index J = static_cast<Eigen::Index>(pairs.size());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(Q), J);
  if (J == 0)
  {
    return out;
  }

  // Distinct radial factors (l, n) and the column -> radial/harmonic maps.
  std::map<std::pair<int, int>, int> radial_index;
  std::vector<const EigenPair *> radial_rep;
  std::vector<int> col_radial(J), col_harm(J);
  int lmax = 0;
  for (Eigen::Index j = 0; j < J; ++j)
  {
    const auto &p = pairs[j];
    require_free(p, "evaluate_on_rule");
    const auto key = std::make_pair(p.mode.l, p.mode.n);
    auto it = radial_index.find(key);
    if (it == radial_index.end())
    {
      it = radial_index.emplace(key, static_cast<int>(radial_rep.size())).first;
      radial_rep.push_back(&p);
    }
    col_radial[j] = it->second;
    col_harm[j] = specfun::harmonic_index(p.mode.l, p.mode.m);
    lmax = std::max(lmax, p.mode.l);
  }

  parallel_for(Q, [&](std::size_t b, std::size_t e) {
    std::vector<double> ylm((lmax + 1) * (lmax + 1));
    std::vector<double> rad(radial_rep.size());
    for (std::size_t i = b; i < e; ++i)
    {
      const auto &c = rule.coords[i];
      specfun::real_spherical_harmonics_all(lmax, c.theta, c.phi, ylm);
      for (std::size_t k = 0; k < radial_rep.size(); ++k)
      {
        const auto &p = *radial_rep[k];
        rad[k] = p.norm_const * specfun::spherical_bessel_j(p.mode.l, p.alpha * c.r / p.radius);
      }
      for (Eigen::Index j = 0; j < J; ++j)
      {
        out(static_cast<Eigen::Index>(i), j) = rad[col_radial[j]] * ylm[col_harm[j]];
      }
    }
  });
  return out;
}

}  // namespace

Eigen::MatrixXd evaluate_on_rule(std::span<const EigenPair> pairs, const QuadratureRule &rule)
{
  const Eigen::Index J = static_cast<Eigen::Index>(pairs.size());
  const bool any_perturbed =
      std::any_of(pairs.begin(), pairs.end(), [](const EigenPair &p) { return p.perturbed; });
  if (!any_perturbed)
  {
    return evaluate_free_on_rule(pairs, rule);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rule.size()), J);
  std::vector<EigenPair> free_cols;
  std::vector<Eigen::Index> free_idx;
  std::map<const Basis *, Eigen::MatrixXd> basis_values;
  for (Eigen::Index j = 0; j < J; ++j)
  {
    const auto &p = pairs[j];
    if (!p.perturbed)
    {
      free_cols.push_back(p);
      free_idx.push_back(j);
      continue;
    }
    auto it = basis_values.find(p.basis.get());
    if (it == basis_values.end())
    {
      it = basis_values.emplace(p.basis.get(), evaluate_free_on_rule(*p.basis, rule)).first;
    }
    out.col(j) = it->second * p.coefficients;
  }
  if (!free_cols.empty())
  {
    const auto fv = evaluate_free_on_rule(free_cols, rule);
    for (std::size_t k = 0; k < free_idx.size(); ++k)
    {
      out.col(free_idx[k]) = fv.col(static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

namespace
{

void check_sphere(const EigenPair &pair, const QuadratureRule &sphere)
{
  if (sphere.kind != RuleKind::sphere)
  {
    throw std::invalid_argument("boundary_traces: rule must be a sphere rule");
  }
  if (std::abs(sphere.radius - pair.radius) > 1e-12 * pair.radius)
  {
    throw std::invalid_argument("boundary_traces: rule radius differs from eigenpair radius");
  }
}

// Harmonic table, row per node.
std::vector<double> harmonic_table(int lmax, const QuadratureRule &sphere)
{
  const std::size_t nh = static_cast<std::size_t>((lmax + 1) * (lmax + 1));
  std::vector<double> table(sphere.size() * nh);
  for (std::size_t i = 0; i < sphere.size(); ++i)
  {
    specfun::real_spherical_harmonics_all(
        lmax, sphere.coords[i].theta, sphere.coords[i].phi,
        std::span<double>(table.data() + i * nh, nh));
  }
  return table;
}

Traces free_traces(const EigenPair &p, std::span<const double> table, int lmax,
                   std::size_t nodes)
{
  const std::size_t nh = static_cast<std::size_t>((lmax + 1) * (lmax + 1));
  const int h = specfun::harmonic_index(p.mode.l, p.mode.m);
  const double radial =
      p.norm_const * (p.alpha / p.radius) * specfun::spherical_bessel_j_derivative(p.mode.l, p.alpha);
  const double k2 = p.kappa * p.kappa;
  Traces t;
  t.norm_trace.resize(nodes);
  t.lap_trace.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i)
  {
    const double v = radial * table[i * nh + h];
    t.norm_trace[i] = v;
    t.lap_trace[i] = -k2 * v;
  }
  return t;
}

int max_degree(std::span<const EigenPair> pairs)
{
  int lmax = 0;
  for (const auto &p : pairs)
  {
    if (p.perturbed)
    {
      for (const auto &b : *p.basis)
      {
        lmax = std::max(lmax, b.mode.l);
      }
    }
    else
    {
      lmax = std::max(lmax, p.mode.l);
    }
  }
  return lmax;
}

Traces combine(const EigenPair &p, const std::vector<Traces> &basis_traces, std::size_t nodes)
{
  Traces t;
  t.norm_trace.assign(nodes, 0.0);
  t.lap_trace.assign(nodes, 0.0);
  for (Eigen::Index k = 0; k < p.coefficients.size(); ++k)
  {
    const double c = p.coefficients[k];
    if (c == 0.0)
    {
      continue;
    }
    const auto &b = basis_traces[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < nodes; ++i)
    {
      t.norm_trace[i] += c * b.norm_trace[i];
      t.lap_trace[i] += c * b.lap_trace[i];
    }
  }
  return t;
}

}  // namespace

Traces boundary_traces(const EigenPair &pair, const QuadratureRule &sphere)
{
  check_sphere(pair, sphere);
  const EigenPair *one = &pair;
  const int lmax = max_degree(std::span<const EigenPair>(one, 1));
  const auto table = harmonic_table(lmax, sphere);
  if (!pair.perturbed)
  {
    require_free(pair, "boundary_traces");
    return free_traces(pair, table, lmax, sphere.size());
  }
  std::vector<Traces> bt;
  bt.reserve(pair.basis->size());
  for (const auto &b : *pair.basis)
  {
    bt.push_back(free_traces(b, table, lmax, sphere.size()));
  }
  return combine(pair, bt, sphere.size());
}

void attach_traces(std::span<EigenPair> pairs, const QuadratureRule &sphere)
{
  if (pairs.empty())
  {
    return;
  }
  for (const auto &p : pairs)
  {
    check_sphere(p, sphere);
  }
  const int lmax = max_degree(pairs);
  const auto table = harmonic_table(lmax, sphere);
  std::map<const Basis *, std::vector<Traces>> cache;
  for (auto &p : pairs)
  {
    Traces t;
    if (!p.perturbed)
    {
      require_free(p, "attach_traces");
      t = free_traces(p, table, lmax, sphere.size());
    }
    else
    {
      auto it = cache.find(p.basis.get());
      if (it == cache.end())
      {
        std::vector<Traces> bt;
        for (const auto &b : *p.basis)
        {
          bt.push_back(free_traces(b, table, lmax, sphere.size()));
        }
        it = cache.emplace(p.basis.get(), std::move(bt)).first;
      }
      t = combine(p, it->second, sphere.size());
    }
    p.norm_trace = std::move(t.norm_trace);
    p.lap_trace = std::move(t.lap_trace);
  }
}

namespace
{

struct Mode
{
  double mu;
  Eigen::VectorXd c;
};

void normalize_sign(Eigen::VectorXd &c)
{
  Eigen::Index k = 0;
  c.cwiseAbs().maxCoeff(&k);
  if (c[k] < 0.0)
  {
    c = -c;
  }
}

}  // namespace

std::vector<EigenPair> navier_eigenpairs_perturbed(const PotentialSpec &V, double R,
                                                   std::span<const EigenPair> basis, int count,
                                                   const QuadratureRule &rule,
                                                   const GalerkinOptions &options)
{
  check_radius(R);
  V.validate(R);
  const int J = static_cast<int>(basis.size());
  if (count < 1)
  {
    throw std::invalid_argument("navier_eigenpairs_perturbed: count must be >= 1");
  }
  if (J < options.min_basis_factor * count)
  {
    throw std::invalid_argument("navier_eigenpairs_perturbed: basis size " + std::to_string(J) +
                                " below " + std::to_string(options.min_basis_factor) +
                                " x count");
  }
  for (const auto &b : basis)
  {
    require_free(b, "navier_eigenpairs_perturbed");
    if (std::abs(b.radius - R) > 1e-12 * R)
    {
      throw std::invalid_argument("navier_eigenpairs_perturbed: basis radius differs from R");
    }
  }
  auto shared = std::make_shared<const Basis>(basis.begin(), basis.end());

  if (V.is_zero())
  {
    std::vector<EigenPair> out(basis.begin(), basis.begin() + count);
    for (int j = 0; j < count; ++j)
    {
      out[j].coefficients = Eigen::VectorXd::Unit(J, j);
      out[j].basis = shared;
    }
    return out;
  }

  if (rule.kind != RuleKind::ball)
  {
    throw std::invalid_argument("navier_eigenpairs_perturbed: rule must be a ball rule");
  }
  if (rule.radius > R * (1.0 + 1e-12) || rule.radius < V.support(R) * (1.0 - 1e-12))
  {
    throw std::invalid_argument(
        "navier_eigenpairs_perturbed: rule radius must cover supp V and stay inside B_R");
  }

  const Eigen::MatrixXd phi = evaluate_on_rule(basis, rule);
  const auto v = sample_potential(V, rule);
  Eigen::VectorXd wv(static_cast<Eigen::Index>(rule.size()));
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    wv[static_cast<Eigen::Index>(i)] = rule.weights[i] * v[i];
  }
  Eigen::MatrixXd G = phi.transpose() * (wv.asDiagonal() * phi);
  const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  const double asym = (G - G.transpose()).cwiseAbs().maxCoeff();
  if (asym > options.symmetry_tolerance * scale)
  {
    throw ConsistencyError("Galerkin matrix not symmetric: " + std::to_string(asym));
  }
  G = (0.5 * (G + G.transpose())).eval();

  // Radial potentials do not couple different (l, m). When the assembled matrix
  // confirms this, solve block by block so every mode keeps pure (l, m) labels.
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int j = 0; j < J; ++j)
  {
    blocks[{basis[j].mode.l, basis[j].mode.m}].push_back(j);
  }
  double off_block = 0.0;
  for (int j = 0; j < J; ++j)
  {
    for (int k = 0; k < J; ++k)
    {
      if (basis[j].mode.l != basis[k].mode.l || basis[j].mode.m != basis[k].mode.m)
      {
        off_block = std::max(off_block, std::abs(G(j, k)));
      }
    }
  }

  std::vector<Mode> modes;
  if (off_block <= options.symmetry_tolerance * scale)
  {
    for (const auto &[key, idx] : blocks)
    {
      const auto nb = static_cast<Eigen::Index>(idx.size());
      Eigen::MatrixXd M(nb, nb);
      for (Eigen::Index a = 0; a < nb; ++a)
      {
        for (Eigen::Index b = 0; b < nb; ++b)
        {
          M(a, b) = G(idx[a], idx[b]);
        }
        M(a, a) += basis[idx[a]].mu;
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
      for (Eigen::Index q = 0; q < nb; ++q)
      {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(J);
        for (Eigen::Index a = 0; a < nb; ++a)
        {
          c[idx[a]] = es.eigenvectors()(a, q);
        }
        modes.push_back({es.eigenvalues()[q], std::move(c)});
      }
    }
  }
  else
  {
    Eigen::MatrixXd M = G;
    for (int j = 0; j < J; ++j)
    {
      M(j, j) += basis[j].mu;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    for (Eigen::Index q = 0; q < J; ++q)
    {
      modes.push_back({es.eigenvalues()[q], es.eigenvectors().col(q)});
    }
  }

  std::vector<EigenPair> out;
  out.reserve(modes.size());
  for (auto &md : modes)
  {
    normalize_sign(md.c);
    Eigen::Index k = 0;
    md.c.cwiseAbs().maxCoeff(&k);
    EigenPair p;
    p.mu = md.mu;
    p.kappa = std::sqrt(std::sqrt(md.mu));
    p.radius = R;
    p.mode = basis[k].mode;
    p.perturbed = true;
    p.coefficients = std::move(md.c);
    p.basis = shared;
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const EigenPair &a, const EigenPair &b) {
    return a.mu < b.mu;
  });
  // Tie-break numerically degenerate levels by (l, m).
  for (std::size_t s = 0; s < out.size();)
  {
    std::size_t e = s + 1;
    while (e < out.size() && out[e].mu - out[s].mu <= 1e-9 * out[s].mu)
    {
      ++e;
    }
    std::stable_sort(out.begin() + s, out.begin() + e, [](const EigenPair &a, const EigenPair &b) {
      return std::tie(a.mode.l, a.mode.m, a.mode.n) < std::tie(b.mode.l, b.mode.m, b.mode.n);
    });
    s = e;
  }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

WeylFit weyl_check(std::span<const double> mu)
{
  const std::size_t N = mu.size();
  if (N < 50)
  {
    throw std::invalid_argument("weyl_check: need at least 50 eigenvalues, got " +
                                std::to_string(N));
  }
  WeylFit fit{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < N; ++k)
  {
    if (k > 0 && mu[k] < mu[k - 1])
    {
      throw std::invalid_argument("weyl_check: eigenvalues must be sorted");
    }
    const double n = static_cast<double>(k + 1);
    const double ratio = mu[k] / std::pow(n, 4.0 / 3.0);
    fit.E1 = std::min(fit.E1, ratio);
    fit.E2 = std::max(fit.E2, ratio);
    const double x = std::log(n), y = std::log(mu[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(N);
  fit.exponent = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  return fit;
}

WeylFit weyl_check(std::span<const EigenPair> pairs)
{
  std::vector<double> mu(pairs.size());
  std::transform(pairs.begin(), pairs.end(), mu.begin(), [](const EigenPair &p) { return p.mu; });
  return weyl_check(mu);
}

TraceGrowth trace_growth_check(std::span<const EigenPair> pairs, const QuadratureRule &sphere)
{
  TraceGrowth out;
  for (std::size_t j = 0; j < pairs.size(); ++j)
  {
    const auto &p = pairs[j];
    check_sphere(p, sphere);
    if (p.norm_trace.size() != sphere.size() || p.lap_trace.size() != sphere.size())
    {
      throw std::invalid_argument("trace_growth_check: traces missing or on another rule");
    }
    double n2 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < sphere.size(); ++i)
    {
      n2 += sphere.weights[i] * p.norm_trace[i] * p.norm_trace[i];
      l2 += sphere.weights[i] * p.lap_trace[i] * p.lap_trace[i];
    }
    const double k = p.kappa;
    TraceRow row;
    row.index = static_cast<int>(j + 1);
    row.kappa = k;
    row.norm_ratio = std::sqrt(n2) / (p.perturbed ? k * k : k);
    row.lap_ratio = std::sqrt(l2) / (k * k * k * k);
    out.max_norm_ratio = std::max(out.max_norm_ratio, row.norm_ratio);
    out.max_lap_ratio = std::max(out.max_lap_ratio, row.lap_ratio);
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace biharm::spectral
