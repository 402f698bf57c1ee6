// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>

#include "biharm/resolvent.hpp"

namespace biharm::noise
{

// SplitMix64:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // (next() >> 11) * 2^-53, in [0, 1).
  double uniform();
  // Box-Muller from two uniforms u1 = 1 - uniform(), u2 = uniform():
  // r = sqrt(-2 log u1), returns (r cos(2 pi u2), r sin(2 pi u2)).
  std::pair<double, double> normal_pair();

private:
  std::uint64_t state_;
};

// Seed of the k-th independent stream: first output of SplitMix64(base ^ (k * 0xD1B54A32D192ED03)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

// Adds complex Gaussian noise node by node: all u values first, then all Delta u values.
// Each value gets sigma/sqrt(2) * (n1 + i n2) from one normal_pair, where sigma is
// level times the RMS of that clean array. Records level and seed in the dataset.
void add_noise(resolvent::BoundaryDataset &data, double level, std::uint64_t seed);

}  // namespace biharm::noise
