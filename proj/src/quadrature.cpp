// SPDX-License-Identifier: Apache-2.0

#include "biharm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "biharm/csv.hpp"
#include "biharm/specfun.hpp"

namespace biharm::quad
{

namespace
{

void check_sizes(double R, int n_theta, int n_phi)
{
  if (!(R > 0.0) || !std::isfinite(R))
  {
    throw std::invalid_argument("quadrature: radius must be positive and finite");
  }
  if (n_theta < 2 || n_theta > specfun::kMaxGaussPoints)
  {
    throw std::invalid_argument("quadrature: n_theta=" + std::to_string(n_theta) +
                                " outside [2, 512]");
  }
  if (n_phi < 4)
  {
    throw std::invalid_argument("quadrature: n_phi=" + std::to_string(n_phi) + " must be >= 4");
  }
}

// Appends the angular rule on the sphere of radius r, weights scaled by wr.
void append_shell(QuadratureRule &rule, double r, double wr,
                  const std::vector<specfun::GaussNode> &gl, int n_phi)
{
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  for (const auto &g : gl)
  {
    const double ct = g.node;
    const double st = std::sqrt((1.0 - ct) * (1.0 + ct));
    const double theta = std::acos(ct);
    for (int k = 0; k < n_phi; ++k)
    {
      const double phi = dphi * k;
      rule.nodes.push_back({r * st * std::cos(phi), r * st * std::sin(phi), r * ct});
      rule.weights.push_back(wr * g.weight * dphi);
      rule.coords.push_back({r, theta, phi});
    }
  }
}

}  // namespace

std::string_view to_string(RuleKind kind)
{
  return kind == RuleKind::sphere ? "sphere" : "ball";
}

QuadratureRule sphere_rule(double R, int n_theta, int n_phi)
{
  check_sizes(R, n_theta, n_phi);
  QuadratureRule rule;
  rule.kind = RuleKind::sphere;
  rule.radius = R;
  rule.n_r = 1;
  rule.n_theta = n_theta;
  rule.n_phi = n_phi;
  rule.exactness = std::min(2 * n_theta - 1, n_phi - 1);
  const auto gl = specfun::gauss_legendre(n_theta);
  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  rule.coords.reserve(n);
  append_shell(rule, R, R * R, gl, n_phi);
  return rule;
}

QuadratureRule ball_rule(double R, int n_r, int n_theta, int n_phi)
{
  check_sizes(R, n_theta, n_phi);
  if (n_r < 2 || n_r > specfun::kMaxGaussPoints)
  {
    throw std::invalid_argument("quadrature: n_r=" + std::to_string(n_r) + " outside [2, 512]");
  }
  QuadratureRule rule;
  rule.kind = RuleKind::ball;
  rule.radius = R;
  rule.n_r = n_r;
  rule.n_theta = n_theta;
  rule.n_phi = n_phi;
  rule.exactness = std::min({2 * n_r - 3, 2 * n_theta - 1, n_phi - 1});
  const auto gr = specfun::gauss_legendre(n_r);
  const auto gl = specfun::gauss_legendre(n_theta);
  const std::size_t n = static_cast<std::size_t>(n_r) * n_theta * n_phi;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  rule.coords.reserve(n);
  for (const auto &g : gr)
  {
    const double r = 0.5 * R * (g.node + 1.0);
    append_shell(rule, r, 0.5 * R * g.weight * r * r, gl, n_phi);
  }
  return rule;
}

void write_csv(const QuadratureRule &rule, std::ostream &os)
{
  os << "x,y,z,w,kind\n";
  const auto kind = to_string(rule.kind);
  for (std::size_t i = 0; i < rule.size(); ++i)
  {
    const auto &p = rule.nodes[i];
    os << csv::fmt(p[0]) << ',' << csv::fmt(p[1]) << ',' << csv::fmt(p[2]) << ','
       << csv::fmt(rule.weights[i]) << ',' << kind << '\n';
  }
}

}  // namespace biharm::quad
