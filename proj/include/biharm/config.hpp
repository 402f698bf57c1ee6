// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "biharm/inverse.hpp"
#include "biharm/resolvent.hpp"
#include "biharm/spectral.hpp"

namespace biharm::harness
{

// Invalid experiment configuration; field() names the offending JSON path.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string field, const std::string &message)
    : std::runtime_error(field + ": " + message), field_(std::move(field))
  {
  }
  const std::string &field() const { return field_; }

private:
  std::string field_;
};

struct QuadratureConfig
{
  int n_r = 24;
  int n_theta = 12;
  int n_phi = 24;
  int sphere_n_theta = 12;
  int sphere_n_phi = 24;
  bool operator==(const QuadratureConfig &) const = default;
};

struct BasisConfig
{
  // Number of eigenpairs used by the experiment.
  int modes = 10;
  int l_max = 8;
  int n_max = 8;
  int galerkin_J = 80;
  bool operator==(const BasisConfig &) const = default;
};

struct BandConfig
{
  double min = 0.5;
  double max = 1.0;
  int points = 50;
  bool operator==(const BandConfig &) const = default;
};

// Exactly one of eigen_indices (1-based) and band is used.
struct WavenumberConfig
{
  std::vector<int> eigen_indices;
  std::optional<BandConfig> band;
  bool operator==(const WavenumberConfig &) const = default;
};

struct ScanConfig
{
  double re_min = 5.0;
  double re_max = 20.0;
  double im_min = -0.5;
  double im_max = 2.0;
  int re_steps = 16;
  int im_steps = 6;
  // Ball rule for the Hilbert-Schmidt and ||V R0|| estimates.
  int n_r = 8;
  int n_theta = 6;
  int n_phi = 12;
  bool operator==(const ScanConfig &) const = default;
};

struct ExperimentConfig
{
  double R = 1.0;
  spectral::PotentialSpec potential;
  inverse::SourceSpec source;
  QuadratureConfig quadrature;
  BasisConfig basis;
  WavenumberConfig wavenumbers;
  double noise_level = 0.0;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  // Forward solves with a larger condition estimate are reported as near-resonant.
  double max_condition = 1e12;
  // When present, must agree with whether the potential vanishes.
  std::optional<bool> v_zero_weights;
  ScanConfig scan;
  resolvent::OmegaDelta omega{0.5, 5.0, 0.4};

  bool operator==(const ExperimentConfig &) const;
};

// Five-mode V = 0 reconstruction with the baseline quadrature.
ExperimentConfig default_config();

// Throws ConfigError naming the first offending field.
void validate(const ExperimentConfig &config);

ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const ExperimentConfig &config);
ExperimentConfig load_config(const std::filesystem::path &path);

}  // namespace biharm::harness
