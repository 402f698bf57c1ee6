// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "biharm/csv.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/specfun.hpp"

using namespace biharm;
using namespace biharm::quad;

namespace
{

constexpr double pi = std::numbers::pi;

template <class F>
double integrate(const QuadratureRule &rule, F &&f)
{
  double s = 0;
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    s += rule.weights[i] * f(rule.nodes[i]);
  }
  return s;
}

// Integral of x^a y^b z^c over the unit sphere.
double sphere_monomial(int a, int b, int c)
{
  if (a % 2 || b % 2 || c % 2)
  {
    return 0.0;
  }
  const double al = 0.5 * (a + 1), be = 0.5 * (b + 1), ga = 0.5 * (c + 1);
  return 2.0 * std::exp(std::lgamma(al) + std::lgamma(be) + std::lgamma(ga) -
                        std::lgamma(al + be + ga));
}

// Integral of exp(-|x|^2) over B_R.
double gaussian_ball(double R)
{
  return 4 * pi * (std::sqrt(pi) / 4 * std::erf(R) - R / 2 * std::exp(-R * R));
}

}  // namespace

TEST(SphereRule, Basics)
{
  const auto rule = sphere_rule(1.0, 8, 16);
  EXPECT_EQ(rule.size(), 128u);
  EXPECT_EQ(rule.kind, RuleKind::sphere);
  EXPECT_NEAR(integrate(rule, [](const Point3 &) { return 1.0; }), 12.5663706144, 1e-10);
  EXPECT_NEAR(integrate(rule, [](const Point3 &) { return 1.0; }), 4 * pi, 4 * pi * 1e-12);
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    const auto &p = rule.nodes[i];
    EXPECT_NEAR(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]), 1.0, 1e-14);
    EXPECT_GT(rule.weights[i], 0.0);
  }
}

TEST(SphereRule, HarmonicIntegrals)
{
  const auto rule = sphere_rule(1.0, 8, 16);
  double y21 = 0, y10 = 0;
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    const auto &c = rule.coords[i];
    const double a = specfun::real_spherical_harmonic(2, 1, c.theta, c.phi);
    y21 += rule.weights[i] * a * a;
    y10 += rule.weights[i] * specfun::real_spherical_harmonic(1, 0, c.theta, c.phi);
  }
  EXPECT_NEAR(y21, 1.0, 1e-12);
  EXPECT_NEAR(y10, 0.0, 1e-13);
}

TEST(SphereRule, MonomialExactness)
{
  const double R = 1.7;
  const auto rule = sphere_rule(R, 5, 11);
  ASSERT_EQ(rule.exactness, 9);
  for (int a = 0; a <= 9; ++a)
  {
    for (int b = 0; a + b <= 9; ++b)
    {
      for (int c = 0; a + b + c <= 9; ++c)
      {
        const double got = integrate(rule, [&](const Point3 &p) {
          return std::pow(p[0], a) * std::pow(p[1], b) * std::pow(p[2], c);
        });
        const double want = sphere_monomial(a, b, c) * std::pow(R, a + b + c + 2);
        EXPECT_NEAR(got, want, 1e-12 * std::pow(R, a + b + c + 2)) << a << b << c;
      }
    }
  }
}

TEST(SphereRule, NodesOnScaledSphere)
{
  const auto rule = sphere_rule(2.5, 6, 9);
  for (const auto &p : rule.nodes)
  {
    EXPECT_NEAR(std::hypot(p[0], p[1], p[2]), 2.5, 2.5 * 1e-14);
  }
  EXPECT_NEAR(integrate(rule, [](const Point3 &) { return 1.0; }), 4 * pi * 6.25,
              4 * pi * 6.25 * 1e-12);
}

TEST(BallRule, VolumeAndMoments)
{
  const auto rule = ball_rule(1.0, 6, 4, 8);
  EXPECT_EQ(rule.size(), 6u * 4u * 8u);
  EXPECT_NEAR(integrate(rule, [](const Point3 &) { return 1.0; }), 4.1887902048, 1e-10);
  EXPECT_NEAR(integrate(rule, [](const Point3 &) { return 1.0; }), 4 * pi / 3, 1e-12 * 4 * pi / 3);
  EXPECT_NEAR(integrate(rule,
                        [](const Point3 &p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; }),
              2.5132741229, 1e-10);
  const auto big = ball_rule(3.0, 5, 3, 6);
  EXPECT_NEAR(integrate(big, [](const Point3 &) { return 1.0; }), 36 * pi, 36 * pi * 1e-12);
}

TEST(BallRule, GroundModeNormalization)
{
  // phi = sqrt(2) pi j_0(pi r) Y_00 on the unit ball.
  const auto rule = ball_rule(1.0, 24, 12, 24);
  const double s = integrate(rule, [](const Point3 &p) {
    const double r = std::hypot(p[0], p[1], p[2]);
    const double v = std::sqrt(2.0) * pi * std::sin(pi * r) / (pi * r) / std::sqrt(4 * pi);
    return v * v;
  });
  EXPECT_NEAR(s, 1.0, 1e-10);
}

TEST(BallRule, ShellWeights)
{
  const double R = 1.3;
  const int nr = 9, nt = 5, np = 7;
  const auto rule = ball_rule(R, nr, nt, np);
  const auto gr = specfun::gauss_legendre(nr);
  const std::size_t per_shell = nt * np;
  double cumulative = 0, cumulative_rule = 0;
  for (int i = 0; i < nr; ++i)
  {
    double shell = 0;
    for (std::size_t k = 0; k < per_shell; ++k)
    {
      const auto idx = i * per_shell + k;
      shell += rule.weights[idx];
      EXPECT_NEAR(rule.coords[idx].r, 0.5 * R * (gr[i].node + 1), 1e-15);
    }
    const double r = 0.5 * R * (gr[i].node + 1);
    const double want = 4 * pi * r * r * 0.5 * R * gr[i].weight;
    EXPECT_NEAR(shell, want, 1e-12 * want);
    cumulative += want;
    cumulative_rule += shell;
    EXPECT_NEAR(cumulative_rule, cumulative, 1e-12 * cumulative);
  }
  EXPECT_NEAR(cumulative, 4 * pi * R * R * R / 3, 1e-12 * cumulative);
}

TEST(BallRule, RefinementConvergence)
{
  const double exact = gaussian_ball(1.0);

  // Monte Carlo cross-check of the closed form.
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double acc = 0, acc2 = 0;
  const int samples = 1000000;
  for (int k = 0; k < samples; ++k)
  {
    const double x = u(gen), y = u(gen), z = u(gen);
    const double r2 = x * x + y * y + z * z;
    const double v = r2 <= 1.0 ? 8.0 * std::exp(-r2) : 0.0;
    acc += v;
    acc2 += v * v;
  }
  const double mean = acc / samples;
  const double sd = std::sqrt((acc2 / samples - mean * mean) / samples);
  EXPECT_LT(std::abs(mean - exact), 5 * sd);

  double prev = 1.0;
  for (int nr : {2, 4, 8, 16})
  {
    const auto rule = ball_rule(1.0, nr, 2, 4);
    const double err = std::abs(integrate(rule, [](const Point3 &p) {
                                  return std::exp(-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
                                }) -
                                exact);
    if (prev > 1e-10)
    {
      EXPECT_LE(err, 0.5 * prev) << "n_r=" << nr;
    }
    prev = err;
  }
  EXPECT_LT(prev, 1e-10);
}

TEST(QuadratureRule, CsvExport)
{
  const auto rule = sphere_rule(1.0, 2, 4);
  std::ostringstream os;
  write_csv(rule, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "x,y,z,w,kind");
  std::size_t n = 0;
  while (std::getline(is, line))
  {
    const auto f = csv::split(line);
    ASSERT_EQ(f.size(), 5u);
    EXPECT_EQ(csv::parse_double(f[0]), rule.nodes[n][0]);
    EXPECT_EQ(csv::parse_double(f[3]), rule.weights[n]);
    EXPECT_EQ(f[4], "sphere");
    ++n;
  }
  EXPECT_EQ(n, rule.size());
}

TEST(QuadratureRule, RejectsDegenerateSizes)
{
  EXPECT_THROW(sphere_rule(1.0, 1, 8), std::invalid_argument);
  EXPECT_THROW(sphere_rule(1.0, 4, 3), std::invalid_argument);
  EXPECT_THROW(sphere_rule(0.0, 4, 8), std::invalid_argument);
  EXPECT_THROW(ball_rule(1.0, 1, 4, 8), std::invalid_argument);
  EXPECT_THROW(ball_rule(-1.0, 4, 4, 8), std::invalid_argument);
}
