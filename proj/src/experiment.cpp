// SPDX-License-Identifier: Apache-2.0

#include "biharm/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "biharm/csv.hpp"
#include "biharm/errors.hpp"
#include "biharm/invariants.hpp"
#include "biharm/noise.hpp"
#include "biharm/specfun.hpp"

namespace biharm::harness
{

namespace fs = std::filesystem;
using nlohmann::json;
using resolvent::BoundaryDataset;

namespace
{

const std::map<std::string, Command> &command_table()
{
  static const std::map<std::string, Command> t{{"eig", Command::eig},
                                                {"forward", Command::forward},
                                                {"reconstruct", Command::reconstruct},
                                                {"sweep", Command::sweep},
                                                {"scan-resolvent", Command::scan_resolvent},
                                                {"check", Command::check}};
  return t;
}

void write_out(const fs::path &path, const std::string &content)
{
  try
  {
    csv::write_file(path, content);
  }
  catch (const std::runtime_error &e)
  {
    throw OutputError(e.what());
  }
}

void make_dir(const fs::path &dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
  {
    throw OutputError("cannot create output directory " + dir.string() +
                      (ec ? ": " + ec.message() : ""));
  }
}

int max_index(const ExperimentConfig &c)
{
  if (c.wavenumbers.eigen_indices.empty())
  {
    throw ConfigError("wavenumbers.eigen_indices", "required by this subcommand");
  }
  return c.wavenumbers.eigen_indices.back();
}

std::string dataset_name(std::size_t k)
{
  std::string s = std::to_string(k);
  return "kappa_" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s + ".csv";
}

}  // namespace

std::optional<Command> command_from_string(const std::string &name)
{
  const auto it = command_table().find(name);
  if (it == command_table().end())
  {
    return std::nullopt;
  }
  return it->second;
}

std::string to_string(Command c)
{
  for (const auto &[name, cmd] : command_table())
  {
    if (cmd == c)
    {
      return name;
    }
  }
  return "?";
}

std::vector<spectral::EigenPair> free_pairs(const ExperimentConfig &config, int count)
{
  const auto &b = config.basis;
  auto pairs = spectral::navier_eigenpairs_free(config.R, b.l_max, b.n_max);
  const double limit = std::min(specfun::bessel_zero(b.l_max + 1, 1).alpha,
                                specfun::bessel_zero(0, b.n_max + 1).alpha) /
                       config.R;
  if (static_cast<int>(pairs.size()) < count || !(pairs[count - 1].kappa < limit))
  {
    throw ConfigError("basis.l_max", "l_max/n_max too small to hold the lowest " +
                                         std::to_string(count) + " modes");
  }
  pairs.resize(static_cast<std::size_t>(count));
  return pairs;
}

Setup build_setup(const ExperimentConfig &config)
{
  validate(config);
  const auto &q = config.quadrature;
  Setup s;
  s.grid = quad::ball_rule(config.R, q.n_r, q.n_theta, q.n_phi);
  s.sphere = quad::sphere_rule(config.R, q.sphere_n_theta, q.sphere_n_phi);
  if (config.potential.is_zero())
  {
    s.pairs = free_pairs(config, config.basis.modes);
  }
  else
  {
    const auto basis = free_pairs(config, config.basis.galerkin_J);
    const auto rule =
        quad::ball_rule(config.potential.support(config.R), q.n_r, q.n_theta, q.n_phi);
    s.pairs = spectral::navier_eigenpairs_perturbed(config.potential, config.R, basis,
                                                    config.basis.modes, rule);
  }
  spectral::attach_traces(s.pairs, s.sphere);
  return s;
}

std::vector<double> forward_wavenumbers(const ExperimentConfig &config, const Setup &setup)
{
  std::vector<double> out;
  if (const auto &band = config.wavenumbers.band)
  {
    for (int k = 0; k < band->points; ++k)
    {
      out.push_back(band->points == 1
                        ? band->min
                        : band->min + (band->max - band->min) * k / (band->points - 1));
    }
    return out;
  }
  const int n = max_index(config);
  for (int j = 0; j < n; ++j)
  {
    const double k = setup.pairs[static_cast<std::size_t>(j)].kappa;
    if (out.empty() || out.back() != k)
    {
      out.push_back(k);
    }
  }
  return out;
}

std::vector<BoundaryDataset> forward_datasets(const ExperimentConfig &config, const Setup &setup,
                                              const std::vector<double> &kappas, bool add_noise)
{
  const auto f = inverse::synthesize(config.source, setup.pairs, setup.grid);
  resolvent::ForwardOptions options;
  options.max_condition = config.max_condition;
  std::vector<BoundaryDataset> out;
  out.reserve(kappas.size());
  for (std::size_t k = 0; k < kappas.size(); ++k)
  {
    auto res = resolvent::solve_forward(f, config.potential,
                                        resolvent::ComplexWavenumber(kappas[k]), setup.grid,
                                        setup.sphere, options);
    if (add_noise)
    {
      noise::add_noise(res.data, config.noise_level, noise::derive_seed(config.seed, k));
    }
    out.push_back(std::move(res.data));
  }
  return out;
}

std::vector<SweepRow> sweep_rows(const ExperimentConfig &config, const Setup &setup,
                                 const std::vector<BoundaryDataset> &datasets)
{
  const auto conv = inverse::convention_for(config.potential);
  std::vector<SweepRow> rows;
  for (int N : config.wavenumbers.eigen_indices)
  {
    const auto r = inverse::reconstruct(datasets, setup.pairs, N, setup.sphere, conv,
                                        &config.source);
    rows.push_back({N, r.discrepancy_sq, r.l2_error_sq, inverse::tail_bound(config.source, N + 1)});
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow> &rows)
{
  std::ostringstream os;
  os << "N,discrepancy_sq,l2_error_sq,tail_bound\n";
  for (const auto &r : rows)
  {
    os << r.N << ',' << csv::fmt(r.discrepancy_sq) << ',' << csv::fmt(r.l2_error_sq) << ','
       << csv::fmt(r.tail_bound) << '\n';
  }
  return os.str();
}

std::string format_eig_csv(const std::vector<spectral::EigenPair> &pairs,
                           const quad::QuadratureRule &sphere)
{
  const auto growth = spectral::trace_growth_check(pairs, sphere);
  std::ostringstream os;
  os << "index,l,m,n,mu,kappa,trace_norm_ratio\n";
  for (std::size_t j = 0; j < pairs.size(); ++j)
  {
    const auto &p = pairs[j];
    os << j + 1 << ',' << p.mode.l << ',' << p.mode.m << ',' << p.mode.n << ',' << csv::fmt(p.mu)
       << ',' << csv::fmt(p.kappa) << ',' << csv::fmt(growth.rows[j].norm_ratio) << '\n';
  }
  return os.str();
}

std::string format_dataset_csv(const BoundaryDataset &d)
{
  std::ostringstream os;
  os << "node_index,re_u,im_u,re_lap_u,im_lap_u\n";
  for (std::size_t i = 0; i < d.u_values.size(); ++i)
  {
    os << i << ',' << csv::fmt(d.u_values[i].real()) << ',' << csv::fmt(d.u_values[i].imag())
       << ',' << csv::fmt(d.lap_u_values[i].real()) << ',' << csv::fmt(d.lap_u_values[i].imag())
       << '\n';
  }
  return os.str();
}

std::string format_scan_csv(const std::vector<resolvent::ResonanceSample> &rows)
{
  std::ostringstream os;
  os << "re_lambda,im_lambda,hs_estimate,vr0_norm,in_omega_delta,bound_satisfied\n";
  for (const auto &r : rows)
  {
    os << csv::fmt(r.lambda.real()) << ',' << csv::fmt(r.lambda.imag()) << ','
       << csv::fmt(r.hs_estimate) << ',' << csv::fmt(r.vr0_norm) << ','
       << (r.in_omega_delta ? 1 : 0) << ',' << (r.bound_satisfied ? 1 : 0) << '\n';
  }
  return os.str();
}

void write_datasets(const fs::path &dir, const std::vector<BoundaryDataset> &datasets)
{
  make_dir(dir);
  json manifest;
  manifest["datasets"] = json::array();
  for (std::size_t k = 0; k < datasets.size(); ++k)
  {
    const auto &d = datasets[k];
    write_out(dir / dataset_name(k), format_dataset_csv(d));
    manifest["datasets"].push_back({{"file", dataset_name(k)},
                                    {"kappa", d.kappa},
                                    {"noise_level", d.noise_level},
                                    {"seed", d.seed}});
  }
  write_out(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<BoundaryDataset> read_datasets(const fs::path &dir, std::size_t sphere_size)
{
  std::ifstream in(dir / "manifest.json");
  if (!in)
  {
    throw std::invalid_argument("no manifest.json in dataset directory " + dir.string());
  }
  json manifest;
  try
  {
    manifest = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw std::invalid_argument(std::string("malformed manifest.json: ") + e.what());
  }
  std::vector<BoundaryDataset> out;
  for (const auto &entry : manifest.at("datasets"))
  {
    BoundaryDataset d;
    d.kappa = entry.at("kappa").get<double>();
    d.noise_level = entry.at("noise_level").get<double>();
    d.seed = entry.at("seed").get<std::uint64_t>();
    const fs::path file = dir / entry.at("file").get<std::string>();
    std::ifstream f(file);
    if (!f)
    {
      throw std::invalid_argument("cannot read dataset " + file.string());
    }
    std::string line;
    std::getline(f, line);
    if (line != "node_index,re_u,im_u,re_lap_u,im_lap_u")
    {
      throw std::invalid_argument("unexpected header in " + file.string());
    }
    while (std::getline(f, line))
    {
      if (line.empty())
      {
        continue;
      }
      const auto fields = csv::split(line);
      if (fields.size() != 5 ||
          csv::parse_double(fields[0]) != static_cast<double>(d.u_values.size()))
      {
        throw std::invalid_argument("malformed row in " + file.string());
      }
      d.u_values.emplace_back(csv::parse_double(fields[1]), csv::parse_double(fields[2]));
      d.lap_u_values.emplace_back(csv::parse_double(fields[3]), csv::parse_double(fields[4]));
    }
    if (d.u_values.size() != sphere_size)
    {
      throw std::invalid_argument(file.string() + " has " + std::to_string(d.u_values.size()) +
                                  " nodes, sphere rule has " + std::to_string(sphere_size));
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<resolvent::ResonanceSample> scan_resolvent(const ExperimentConfig &config)
{
  validate(config);
  const auto &s = config.scan;
  auto axis = [](double lo, double hi, int n, int k) {
    return n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  };
  std::vector<resolvent::cplx> lambdas;
  for (int a = 0; a < s.re_steps; ++a)
  {
    for (int b = 0; b < s.im_steps; ++b)
    {
      lambdas.emplace_back(axis(s.re_min, s.re_max, s.re_steps, a),
                           axis(s.im_min, s.im_max, s.im_steps, b));
    }
  }
  const auto grid = quad::ball_rule(config.R, s.n_r, s.n_theta, s.n_phi);
  const double supp = config.potential.is_zero() ? config.R : config.potential.support(config.R);
  const auto support = quad::ball_rule(supp, s.n_r, s.n_theta, s.n_phi);
  return resolvent::resonance_region_check(config.potential, lambdas, config.R, config.omega, grid,
                                           support);
}

int run(Command command, const ExperimentConfig &config, std::ostream &log,
        const std::optional<fs::path> &data_dir)
{
  try
  {
    validate(config);
    const fs::path out = config.output_dir;
    make_dir(out);
    switch (command)
    {
    case Command::eig:
    {
      const auto setup = build_setup(config);
      write_out(out / "eig.csv", format_eig_csv(setup.pairs, setup.sphere));
      break;
    }
    case Command::forward:
    {
      const auto setup = build_setup(config);
      const auto data = forward_datasets(config, setup, forward_wavenumbers(config, setup));
      write_datasets(out / "data", data);
      std::ostringstream rule;
      quad::write_csv(setup.sphere, rule);
      write_out(out / "sphere_rule.csv", rule.str());
      break;
    }
    case Command::reconstruct:
    {
      const int N = max_index(config);
      const auto setup = build_setup(config);
      const auto data = read_datasets(data_dir.value_or(out / "data"), setup.sphere.size());
      const auto r = inverse::reconstruct(data, setup.pairs, N, setup.sphere,
                                          inverse::convention_for(config.potential),
                                          &config.source);
      std::ostringstream os;
      os << "j,kappa,f_estimate\n";
      for (const auto &c : r.recovered)
      {
        os << c.index << ',' << csv::fmt(c.kappa) << ',' << csv::fmt(c.value) << '\n';
      }
      write_out(out / "recovered_coefficients.csv", os.str());
      const json summary{{"N", r.N},
                         {"discrepancy_sq", r.discrepancy_sq},
                         {"tail_sq", r.tail_sq},
                         {"l2_error_sq", r.l2_error_sq}};
      write_out(out / "summary.json", summary.dump(2) + "\n");
      break;
    }
    case Command::sweep:
    {
      max_index(config);
      const auto setup = build_setup(config);
      const auto data = forward_datasets(config, setup, forward_wavenumbers(config, setup));
      write_out(out / "stability_sweep.csv", format_sweep_csv(sweep_rows(config, setup, data)));
      break;
    }
    case Command::scan_resolvent:
      write_out(out / "resolvent_scan.csv", format_scan_csv(scan_resolvent(config)));
      break;
    case Command::check:
    {
      const auto results = run_invariant_suite(config);
      json report;
      report["invariants"] = json::array();
      bool ok = true;
      for (const auto &r : results)
      {
        report["invariants"].push_back(
            {{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.passed;
      }
      report["passed"] = ok;
      write_out(out / "check_report.json", report.dump(2) + "\n");
      return ok ? kExitOk : kExitFailure;
    }
    }
    return kExitOk;
  }
  catch (const ConfigError &e)
  {
    log << "invalid config: " << e.what() << '\n';
    return kExitInvalid;
  }
  catch (const OutputError &e)
  {
    log << "output error: " << e.what() << '\n';
    return kExitInvalid;
  }
  catch (const std::invalid_argument &e)
  {
    log << "invalid argument: " << e.what() << '\n';
    return kExitInvalid;
  }
  catch (const NearResonanceError &e)
  {
    log << "near resonance: " << e.what() << '\n';
    return kExitResonance;
  }
  catch (const std::exception &e)
  {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace biharm::harness
