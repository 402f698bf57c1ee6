// SPDX-License-Identifier: Apache-2.0

#include "biharm/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biharm::noise
{

std::uint64_t SplitMix64::next()
{
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform()
{
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::normal_pair()
{
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k)
{
  SplitMix64 g(base ^ (k * 0xD1B54A32D192ED03ULL));
  return g.next();
}

namespace
{

void perturb(std::vector<resolvent::cplx> &values, double level, SplitMix64 &gen)
{
  if (values.empty())
  {
    return;
  }
  double ms = 0.0;
  for (const auto &v : values)
  {
    ms += std::norm(v);
  }
  const double sigma = level * std::sqrt(ms / static_cast<double>(values.size()));
  const double s = sigma / std::numbers::sqrt2;
  for (auto &v : values)
  {
    const auto [a, b] = gen.normal_pair();
    v += resolvent::cplx(s * a, s * b);
  }
}

}  // namespace

void add_noise(resolvent::BoundaryDataset &data, double level, std::uint64_t seed)
{
  if (!std::isfinite(level) || level < 0.0)
  {
    throw std::invalid_argument("noise level must be finite and >= 0");
  }
  data.noise_level = level;
  data.seed = seed;
  if (level == 0.0)
  {
    return;
  }
  SplitMix64 gen(seed);
  perturb(data.u_values, level, gen);
  perturb(data.lap_u_values, level, gen);
}

}  // namespace biharm::noise
