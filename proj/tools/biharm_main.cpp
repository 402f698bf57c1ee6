// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "biharm/experiment.hpp"

int main(int argc, char **argv)
{
  using namespace biharm::harness;

  CLI::App app{"Source reconstruction experiments for the perturbed biharmonic operator"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string data_dir;

  for (const char *name : {"eig", "forward", "reconstruct", "sweep", "scan-resolvent", "check"})
  {
    auto *sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment JSON (default config when omitted)");
    sub->add_option("--out", out_dir, "output directory, overrides output_dir");
    sub->add_option("--seed", seed, "noise seed, overrides seed");
    if (std::string(name) == "reconstruct")
    {
      sub->add_option("--data", data_dir, "dataset directory (default <out>/data)");
    }
  }

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const auto command = command_from_string(app.get_subcommands().front()->get_name());
  ExperimentConfig config;
  try
  {
    config = config_path.empty() ? default_config() : load_config(config_path);
    const auto *sub = app.get_subcommands().front();
    if (sub->count("--out") > 0)
    {
      config.output_dir = out_dir;
    }
    if (sub->count("--seed") > 0)
    {
      config.seed = seed;
    }
  }
  catch (const ConfigError &e)
  {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalid;
  }

  std::optional<std::filesystem::path> data;
  if (!data_dir.empty())
  {
    data = data_dir;
  }
  return run(*command, config, std::cerr, data);
}
