// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "biharm/config.hpp"

namespace biharm::harness
{

struct InvariantResult
{
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast structural checks on the configured setup; an exception inside a check counts as a
// failure of that check.
std::vector<InvariantResult> run_invariant_suite(const ExperimentConfig &config);

}  // namespace biharm::harness
