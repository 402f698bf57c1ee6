// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace biharm
{

// Internal numerical consistency check failed (asymmetric matrix, non-real coefficient).
class ConsistencyError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Discrete system too ill-conditioned: the wavenumber sits on or near a pole.
class NearResonanceError : public std::runtime_error
{
public:
  NearResonanceError(const std::string &what, double condition)
    : std::runtime_error(what), condition_(condition)
  {
  }
  double condition() const { return condition_; }

private:
  double condition_;
};

}  // namespace biharm
