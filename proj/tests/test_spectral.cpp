// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "biharm/quadrature.hpp"
#include "biharm/specfun.hpp"
#include "biharm/spectral.hpp"

using namespace biharm;
using namespace biharm::spectral;

namespace
{

constexpr double pi = std::numbers::pi;

double trace_norm(const std::vector<double> &t, const quad::QuadratureRule &s)
{
  double acc = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
  {
    acc += s.weights[i] * t[i] * t[i];
  }
  return std::sqrt(acc);
}

Point3 scaled(const Point3 &p, double f)
{
  return {p[0] * f, p[1] * f, p[2] * f};
}

}  // namespace

TEST(FreeEigenpairs, LowestLevels)
{
  const auto pairs = navier_eigenpairs_free(1.0, 4, 4);
  EXPECT_NEAR(pairs[0].mu, 97.4090910340, 1e-9);
  EXPECT_NEAR(pairs[0].mu, std::pow(pi, 4), 1e-10 * std::pow(pi, 4));
  EXPECT_NEAR(pairs[0].kappa, pi, 1e-14);
  const double a11 = 4.4934094579;
  for (int j = 1; j <= 3; ++j)
  {
    EXPECT_NEAR(pairs[j].mu, std::pow(a11, 4), 1e-6);
    EXPECT_EQ(pairs[j].mode.l, 1);
    EXPECT_EQ(pairs[j].mode.m, j - 2);
  }
  EXPECT_NEAR(pairs[1].mu, 407.6657, 1e-3);
  EXPECT_GT(pairs[4].mu, pairs[3].mu * 1.1);

  const auto big = navier_eigenpairs_free(2.0, 2, 2);
  EXPECT_NEAR(big[0].mu, std::pow(pi / 2, 4), 1e-12);
  EXPECT_NEAR(big[0].mu, 6.0881, 1e-4);
}

TEST(FreeEigenpairs, KappaAndMultiplicity)
{
  const auto pairs = navier_eigenpairs_free(1.0, 8, 6);
  std::map<std::pair<int, int>, int> counts;
  for (std::size_t j = 0; j < pairs.size(); ++j)
  {
    const auto &p = pairs[j];
    EXPECT_NEAR(std::pow(p.kappa, 4), p.mu, 1e-12 * p.mu);
    ++counts[{p.mode.l, p.mode.n}];
    if (j > 0)
    {
      EXPECT_LE(pairs[j - 1].mu, p.mu);
    }
  }
  EXPECT_EQ(counts.size(), 9u * 6u);
  for (const auto &[key, c] : counts)
  {
    EXPECT_EQ(c, 2 * key.first + 1);
  }
}

TEST(FreeEigenpairs, LowestIsComplete)
{
  const auto ref = navier_eigenpairs_free(1.0, 30, 20);
  const auto low = lowest_free_eigenpairs(1.0, 200);
  ASSERT_EQ(low.size(), 200u);
  for (int j = 0; j < 200; ++j)
  {
    EXPECT_EQ(low[j].mode, ref[j].mode) << j;
    EXPECT_EQ(low[j].mu, ref[j].mu);
  }
}

TEST(FreeEigenpairs, RejectsRanges)
{
  EXPECT_THROW(navier_eigenpairs_free(1.0, 31, 2), std::invalid_argument);
  EXPECT_THROW(navier_eigenpairs_free(1.0, 2, 101), std::invalid_argument);
  EXPECT_THROW(navier_eigenpairs_free(0.0, 2, 2), std::invalid_argument);
}

TEST(FreeEigenpairs, OrthonormalOnBall)
{
  const auto pairs = lowest_free_eigenpairs(1.0, 30);
  const auto rule = quad::ball_rule(1.0, 24, 12, 24);
  const Eigen::MatrixXd phi = evaluate_on_rule(pairs, rule);
  Eigen::VectorXd w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    w[i] = rule.weights[i];
  }
  const Eigen::MatrixXd gram = phi.transpose() * w.asDiagonal() * phi;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FreeEigenpairs, PointEvaluationMatchesRuleEvaluation)
{
  const auto pairs = lowest_free_eigenpairs(1.3, 12);
  const auto rule = quad::ball_rule(1.3, 3, 3, 5);
  const Eigen::MatrixXd phi = evaluate_on_rule(pairs, rule);
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    for (std::size_t j = 0; j < pairs.size(); ++j)
    {
      EXPECT_NEAR(phi(i, j), evaluate(pairs[j], rule.nodes[i]), 1e-12);
    }
  }
}

TEST(BoundaryTraces, GroundMode)
{
  auto pairs = lowest_free_eigenpairs(1.0, 1);
  const auto sphere = quad::sphere_rule(1.0, 8, 16);
  const auto t = boundary_traces(pairs[0], sphere);
  for (std::size_t i = 0; i < sphere.size(); ++i)
  {
    EXPECT_NEAR(t.norm_trace[i], -1.2533141373, 1e-10);
    EXPECT_NEAR(t.norm_trace[i], -std::sqrt(pi / 2), 1e-13);
    EXPECT_NEAR(t.lap_trace[i], pi * pi * 1.2533141373, 1e-9);
  }
  EXPECT_NEAR(trace_norm(t.norm_trace, sphere), 4.4428829382, 1e-9);
  EXPECT_NEAR(trace_norm(t.norm_trace, sphere) / pi, std::sqrt(2.0), 1e-12);
}

TEST(BoundaryTraces, MatchRadialFiniteDifference)
{
  const double R = 1.4;
  auto pairs = lowest_free_eigenpairs(R, 20);
  const auto sphere = quad::sphere_rule(R, 4, 6);
  attach_traces(pairs, sphere);
  const double h = 1e-5;
  for (const auto &p : pairs)
  {
    for (std::size_t i = 0; i < sphere.size(); i += 5)
    {
      const auto &x = sphere.nodes[i];
      const double fd = (evaluate(p, scaled(x, 1 + h / R)) - evaluate(p, scaled(x, 1 - h / R))) /
                        (2 * h);
      EXPECT_NEAR(p.norm_trace[i], fd, 1e-7 * (1 + std::abs(fd)));
    }
  }
}

TEST(BoundaryTraces, LaplacianTraceIsExactMultiple)
{
  auto pairs = lowest_free_eigenpairs(1.0, 60);
  const auto sphere = quad::sphere_rule(1.0, 10, 20);
  attach_traces(pairs, sphere);
  for (const auto &p : pairs)
  {
    const double k2 = p.kappa * p.kappa;
    for (std::size_t i = 0; i < sphere.size(); ++i)
    {
      EXPECT_EQ(p.lap_trace[i] + k2 * p.norm_trace[i], 0.0);
    }
  }
}

TEST(BoundaryTraces, RejectsMismatchedRadius)
{
  auto pairs = lowest_free_eigenpairs(1.0, 1);
  EXPECT_THROW(boundary_traces(pairs[0], quad::sphere_rule(2.0, 4, 8)), std::invalid_argument);
  EXPECT_THROW(boundary_traces(pairs[0], quad::ball_rule(1.0, 2, 4, 8)), std::invalid_argument);
}

TEST(Weyl, FreeSpectrum)
{
  const auto pairs = lowest_free_eigenpairs(1.0, 200);
  const auto fit = weyl_check(pairs);
  // Reference slope and extremal ratios from an independent scipy computation of the
  // first 200 levels. The asymptotic 4/3 is approached slowly from below.
  EXPECT_NEAR(fit.exponent, 1.165969001798993, 1e-9);
  EXPECT_NEAR(fit.E1, 43.60556353024119, 1e-8);
  EXPECT_NEAR(fit.E2, 161.7821686816476, 1e-8);
  EXPECT_GT(fit.E1, 0.0);
  EXPECT_LT(fit.E2 / fit.E1, 50.0);

  const auto half = weyl_check(lowest_free_eigenpairs(0.5, 200));
  EXPECT_NEAR(half.E1, 16 * fit.E1, 1e-9 * half.E1);
  EXPECT_NEAR(half.E2, 16 * fit.E2, 1e-9 * half.E2);
  EXPECT_NEAR(half.exponent, fit.exponent, 1e-12);
}

TEST(Weyl, NeedsFiftyValues)
{
  EXPECT_THROW(weyl_check(lowest_free_eigenpairs(1.0, 49)), std::invalid_argument);
}

TEST(TraceGrowth, FreeModes)
{
  auto pairs = lowest_free_eigenpairs(1.0, 100);
  const auto sphere = quad::sphere_rule(1.0, 16, 32);
  attach_traces(pairs, sphere);
  const auto table = trace_growth_check(pairs, sphere);
  ASSERT_EQ(table.rows.size(), 100u);
  EXPECT_NEAR(table.rows[0].norm_ratio, std::sqrt(2.0), 1e-9);
  EXPECT_LE(table.max_norm_ratio, 3.0);
  for (const auto &row : table.rows)
  {
    // |d_nu phi| / kappa = sqrt(2) for every free mode on the unit ball.
    EXPECT_NEAR(row.norm_ratio, std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(row.lap_ratio, std::sqrt(2.0) / row.kappa, 1e-9);
  }
}

TEST(TraceGrowth, ZeroPotentialLimitMatchesFree)
{
  auto basis = lowest_free_eigenpairs(1.0, 40);
  const auto sphere = quad::sphere_rule(1.0, 8, 16);
  const auto ball = quad::ball_rule(1.0, 8, 6, 12);
  auto pert = navier_eigenpairs_perturbed(PotentialSpec{}, 1.0, basis, 10, ball);
  std::vector<EigenPair> free(basis.begin(), basis.begin() + 10);
  attach_traces(pert, sphere);
  attach_traces(free, sphere);
  const auto a = trace_growth_check(pert, sphere);
  const auto b = trace_growth_check(free, sphere);
  for (int j = 0; j < 10; ++j)
  {
    EXPECT_EQ(pert[j].mu, free[j].mu);
    EXPECT_EQ(pert[j].coefficients, Eigen::VectorXd::Unit(40, j));
    EXPECT_EQ(a.rows[j].norm_ratio, b.rows[j].norm_ratio);
    EXPECT_EQ(a.rows[j].lap_ratio, b.rows[j].lap_ratio);
  }
}

TEST(Perturbed, ConstantShift)
{
  auto basis = lowest_free_eigenpairs(1.0, 40);
  const auto ball = quad::ball_rule(1.0, 24, 12, 24);
  const PotentialSpec V{PotentialKind::constant_test, 3.0, 0.5};
  const auto pert = navier_eigenpairs_perturbed(V, 1.0, basis, 10, ball);
  for (int j = 0; j < 10; ++j)
  {
    EXPECT_NEAR(pert[j].mu, basis[j].mu + 3.0, 1e-7);
    EXPECT_EQ(pert[j].mode, basis[j].mode);
  }
}

TEST(Perturbed, BumpBracketsFreeSpectrum)
{
  auto basis = lowest_free_eigenpairs(1.0, 80);
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  const auto ball = quad::ball_rule(0.5, 24, 12, 24);
  const auto pert = navier_eigenpairs_perturbed(V, 1.0, basis, 20, ball);
  for (int j = 0; j < 20; ++j)
  {
    EXPECT_GE(pert[j].mu, basis[j].mu);
    EXPECT_LE(pert[j].mu, basis[j].mu + 5.0);
    EXPECT_NEAR(pert[j].coefficients.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::pow(pert[j].kappa, 4), pert[j].mu, 1e-12 * pert[j].mu);
    if (j > 0)
    {
      EXPECT_LE(pert[j - 1].mu, pert[j].mu * (1 + 1e-9));
    }
  }
  // The ground state sees the bump; shift is strictly positive.
  EXPECT_GT(pert[0].mu - basis[0].mu, 0.1);
}

TEST(Perturbed, UnitNormOnBall)
{
  auto basis = lowest_free_eigenpairs(1.0, 40);
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  const auto pert =
      navier_eigenpairs_perturbed(V, 1.0, basis, 10, quad::ball_rule(0.5, 16, 10, 20));
  const auto rule = quad::ball_rule(1.0, 24, 12, 24);
  const Eigen::MatrixXd phi = evaluate_on_rule(pert, rule);
  Eigen::VectorXd w(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    w[i] = rule.weights[i];
  }
  const Eigen::MatrixXd gram = phi.transpose() * w.asDiagonal() * phi;
  EXPECT_LE((gram - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Perturbed, GalerkinConvergesMonotonically)
{
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  const auto ball = quad::ball_rule(0.5, 24, 12, 24);
  std::vector<double> mu1;
  for (int J : {40, 80, 160, 320, 640})
  {
    const auto basis = lowest_free_eigenpairs(1.0, J);
    mu1.push_back(navier_eigenpairs_perturbed(V, 1.0, basis, 1, ball)[0].mu);
  }
  double prev = std::abs(mu1[1] - mu1[0]);
  for (std::size_t k = 2; k < mu1.size(); ++k)
  {
    const double d = std::abs(mu1[k] - mu1[k - 1]);
    EXPECT_LT(d, prev) << k;
    prev = d;
  }
}

TEST(Perturbed, TracesCombineBasisTraces)
{
  auto basis = lowest_free_eigenpairs(1.0, 40);
  const auto sphere = quad::sphere_rule(1.0, 6, 12);
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  auto pert = navier_eigenpairs_perturbed(V, 1.0, basis, 5, quad::ball_rule(0.5, 16, 8, 16));
  attach_traces(pert, sphere);
  const double h = 1e-5;
  for (const auto &p : pert)
  {
    const auto t = boundary_traces(p, sphere);
    for (std::size_t i = 0; i < sphere.size(); i += 7)
    {
      EXPECT_EQ(t.norm_trace[i], p.norm_trace[i]);
      const auto &x = sphere.nodes[i];
      const double fd = (evaluate(p, scaled(x, 1 + h)) - evaluate(p, scaled(x, 1 - h))) / (2 * h);
      EXPECT_NEAR(p.norm_trace[i], fd, 1e-6 * (1 + std::abs(fd)));
    }
  }
}

TEST(Perturbed, RejectsBadInputs)
{
  auto basis = lowest_free_eigenpairs(1.0, 20);
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  EXPECT_THROW(navier_eigenpairs_perturbed(V, 1.0, basis, 6, quad::ball_rule(0.5, 4, 4, 8)),
               std::invalid_argument);
  EXPECT_THROW(navier_eigenpairs_perturbed(V, 1.0, basis, 5, quad::sphere_rule(0.5, 4, 8)),
               std::invalid_argument);
  EXPECT_THROW(navier_eigenpairs_perturbed(V, 1.0, basis, 5, quad::ball_rule(0.4, 4, 4, 8)),
               std::invalid_argument);
  EXPECT_THROW(navier_eigenpairs_perturbed(V, 2.0, basis, 5, quad::ball_rule(0.5, 4, 4, 8)),
               std::invalid_argument);
}

TEST(Potential, BumpProfile)
{
  const PotentialSpec V{PotentialKind::radial_bump, 5.0, 0.5};
  EXPECT_EQ(V.value(0.0), 5.0);
  EXPECT_EQ(V.value(0.5), 0.0);
  EXPECT_EQ(V.value(0.7), 0.0);
  EXPECT_NEAR(V.value(0.25), 5.0 * std::pow(0.75, 4), 1e-15);
  EXPECT_THROW((PotentialSpec{PotentialKind::radial_bump, 5.0, 1.0}.validate(1.0)),
               std::invalid_argument);
  EXPECT_THROW((PotentialSpec{PotentialKind::radial_bump, -1.0, 0.5}.validate(1.0)),
               std::invalid_argument);
}
