// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace biharm
{

using Point3 = std::array<double, 3>;

namespace quad
{

enum class RuleKind
{
  sphere,
  ball
};

std::string_view to_string(RuleKind kind);

struct SphericalCoord
{
  double r;
  double theta;
  double phi;
};

// Product rule on the sphere of radius R or the ball B_R. Nodes are ordered with the
// radial index slowest, then theta, then phi.
struct QuadratureRule
{
  RuleKind kind = RuleKind::sphere;
  double radius = 1.0;
  int exactness = 0;
  int n_r = 1;
  int n_theta = 0;
  int n_phi = 0;
  std::vector<Point3> nodes;
  std::vector<double> weights;
  std::vector<SphericalCoord> coords;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre in cos(theta) times uniform phi. Integrates Y_lm exactly for
// l < min(2 n_theta, n_phi).
QuadratureRule sphere_rule(double R, int n_theta, int n_phi);

// Radial Gauss-Legendre on [0, R] with r^2 Jacobian times the sphere rule.
QuadratureRule ball_rule(double R, int n_r, int n_theta, int n_phi);

// Columns x,y,z,w,kind.
void write_csv(const QuadratureRule &rule, std::ostream &os);

}  // namespace quad
}  // namespace biharm
