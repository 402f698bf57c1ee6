// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biharm/config.hpp"
#include "biharm/inverse.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/resolvent.hpp"
#include "biharm/spectral.hpp"

namespace biharm::harness
{

enum class Command
{
  eig,
  forward,
  reconstruct,
  sweep,
  scan_resolvent,
  check
};

std::optional<Command> command_from_string(const std::string &name);
std::string to_string(Command c);

// Output directory cannot be created or written.
class OutputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitResonance = 3;

struct Setup
{
  quad::QuadratureRule grid;
  quad::QuadratureRule sphere;
  // basis.modes pairs, free or perturbed, with traces on `sphere`.
  std::vector<spectral::EigenPair> pairs;
};

// The free pairs with l <= l_max, n <= n_max, truncated to `count`; throws ConfigError when
// that truncation could drop a lower mode outside the (l_max, n_max) box.
std::vector<spectral::EigenPair> free_pairs(const ExperimentConfig &config, int count);

Setup build_setup(const ExperimentConfig &config);

// Wavenumbers of the forward run: distinct kappa_j for j up to the largest eigen index, or
// the band grid.
std::vector<double> forward_wavenumbers(const ExperimentConfig &config, const Setup &setup);

// Forward data at the given wavenumbers; dataset k gets noise seed derive_seed(seed, k).
std::vector<resolvent::BoundaryDataset> forward_datasets(const ExperimentConfig &config,
                                                         const Setup &setup,
                                                         const std::vector<double> &kappas,
                                                         bool add_noise = true);

struct SweepRow
{
  int N;
  double discrepancy_sq;
  double l2_error_sq;
  double tail_bound;
};

std::vector<SweepRow> sweep_rows(const ExperimentConfig &config, const Setup &setup,
                                 const std::vector<resolvent::BoundaryDataset> &datasets);

std::string format_sweep_csv(const std::vector<SweepRow> &rows);
std::string format_eig_csv(const std::vector<spectral::EigenPair> &pairs,
                           const quad::QuadratureRule &sphere);
std::string format_dataset_csv(const resolvent::BoundaryDataset &data);
std::string format_scan_csv(const std::vector<resolvent::ResonanceSample> &rows);

// Writes kappa_NNN.csv files and manifest.json; reads them back.
void write_datasets(const std::filesystem::path &dir,
                    const std::vector<resolvent::BoundaryDataset> &datasets);
std::vector<resolvent::BoundaryDataset> read_datasets(const std::filesystem::path &dir,
                                                      std::size_t sphere_size);

std::vector<resolvent::ResonanceSample> scan_resolvent(const ExperimentConfig &config);

// Runs one subcommand and writes its artifacts under config.output_dir. Returns the exit
// code; diagnostics go to `log`. `data_dir` overrides <output_dir>/data for reconstruct.
int run(Command command, const ExperimentConfig &config, std::ostream &log,
        const std::optional<std::filesystem::path> &data_dir = std::nullopt);

}  // namespace biharm::harness
