// SPDX-License-Identifier: Apache-2.0

#include "biharm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "biharm/specfun.hpp"

namespace biharm::harness
{

using nlohmann::json;

namespace
{

// Reads typed fields from one JSON object and rejects keys it was not asked about.
class ObjectReader
{
public:
  ObjectReader(const json &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  std::string field(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string &key)
  {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json &sub(const std::string &key)
  {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string &key, double fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const auto &v = j_.at(key);
    if (!v.is_number())
    {
      throw ConfigError(field(key), "expected a number");
    }
    return v.get<double>();
  }

  int integer(const std::string &key, int fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const auto &v = j_.at(key);
    if (!v.is_number_integer())
    {
      throw ConfigError(field(key), "expected an integer");
    }
    const auto x = v.get<std::int64_t>();
    if (x < -1000000000 || x > 1000000000)
    {
      throw ConfigError(field(key), "integer out of range");
    }
    return static_cast<int>(x);
  }

  std::uint64_t unsigned64(const std::string &key, std::uint64_t fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const auto &v = j_.at(key);
    if (!v.is_number_unsigned())
    {
      throw ConfigError(field(key), "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string &key, bool fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const auto &v = j_.at(key);
    if (!v.is_boolean())
    {
      throw ConfigError(field(key), "expected true or false");
    }
    return v.get<bool>();
  }

  std::string string(const std::string &key, const std::string &fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const auto &v = j_.at(key);
    if (!v.is_string())
    {
      throw ConfigError(field(key), "expected a string");
    }
    return v.get<std::string>();
  }

  void finish() const
  {
    for (const auto &item : j_.items())
    {
      if (!seen_.contains(item.key()))
      {
        throw ConfigError(field(item.key()), "unknown field");
      }
    }
  }

private:
  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string &field, const std::string &message)
{
  if (!ok)
  {
    throw ConfigError(field, message);
  }
}

bool finite(double v) { return std::isfinite(v); }

void check_range(int v, int lo, int hi, const std::string &field)
{
  require(v >= lo && v <= hi, field,
          std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

bool ExperimentConfig::operator==(const ExperimentConfig &o) const
{
  return R == o.R && potential == o.potential && source == o.source &&
         quadrature == o.quadrature && basis == o.basis && wavenumbers == o.wavenumbers &&
         noise_level == o.noise_level && seed == o.seed && output_dir == o.output_dir &&
         max_condition == o.max_condition &&
         v_zero_weights == o.v_zero_weights && scan == o.scan && omega.A == o.omega.A &&
         omega.C0 == o.omega.C0 && omega.delta == o.omega.delta;
}

ExperimentConfig default_config()
{
  ExperimentConfig c;
  c.source.coefficients = {1.0, 0.5, -0.25, 0.1, 0.05};
  c.source.smoothness_order = 2;
  c.source.Q = 2.0;
  c.basis.modes = 5;
  c.basis.galerkin_J = 80;
  c.wavenumbers.eigen_indices = {1, 2, 3, 4, 5};
  return c;
}

void validate(const ExperimentConfig &c)
{
  require(finite(c.R) && c.R > 0.0 && c.R <= 100.0, "R", "must lie in (0, 100]");

  const auto &V = c.potential;
  require(finite(V.amplitude) && V.amplitude >= 0.0, "potential.amplitude",
          "must be finite and >= 0");
  if (V.kind == spectral::PotentialKind::radial_bump)
  {
    require(finite(V.support_radius) && V.support_radius > 0.0 &&
                V.support_radius <= 0.9 * c.R * (1.0 + 1e-12),
            "potential.support_radius", "must lie in (0, 0.9 R]");
  }
  else
  {
    require(finite(V.support_radius) && V.support_radius > 0.0, "potential.support_radius",
            "must be positive");
  }
  require(V.kind != spectral::PotentialKind::constant_test, "potential.kind",
          "constant_test is not compactly supported inside B_R");
  if (c.v_zero_weights)
  {
    require(*c.v_zero_weights == V.is_zero(), "v_zero_weights",
            "must be true exactly when the potential vanishes");
  }

  const auto &q = c.quadrature;
  check_range(q.n_r, 2, specfun::kMaxGaussPoints, "quadrature.n_r");
  check_range(q.n_theta, 2, specfun::kMaxGaussPoints, "quadrature.n_theta");
  check_range(q.n_phi, 4, 2048, "quadrature.n_phi");
  check_range(q.sphere_n_theta, 2, specfun::kMaxGaussPoints, "quadrature.sphere_n_theta");
  check_range(q.sphere_n_phi, 4, 2048, "quadrature.sphere_n_phi");

  const auto &b = c.basis;
  check_range(b.modes, 1, 1000, "basis.modes");
  check_range(b.l_max, 0, 30, "basis.l_max");
  check_range(b.n_max, 1, 100, "basis.n_max");
  if (!V.is_zero())
  {
    check_range(b.galerkin_J, 4 * b.modes, (b.l_max + 1) * (b.l_max + 1) * b.n_max,
                "basis.galerkin_J");
  }
  else
  {
    check_range(b.galerkin_J, 1, 100000, "basis.galerkin_J");
  }

  const auto &s = c.source;
  require(s.coefficients.size() <= static_cast<std::size_t>(b.modes), "source.coefficients",
          "more coefficients than basis.modes");
  for (std::size_t j = 0; j < s.coefficients.size(); ++j)
  {
    require(finite(s.coefficients[j]), "source.coefficients[" + std::to_string(j) + "]",
            "must be finite");
  }
  check_range(s.smoothness_order, 0, 20, "source.smoothness_order");
  require(finite(s.Q) && s.Q > 0.0, "source.Q", "must be positive");

  const auto &w = c.wavenumbers;
  require(w.eigen_indices.empty() != !w.band.has_value(), "wavenumbers",
          "set exactly one of eigen_indices and band");
  for (std::size_t k = 0; k < w.eigen_indices.size(); ++k)
  {
    const std::string f = "wavenumbers.eigen_indices[" + std::to_string(k) + "]";
    check_range(w.eigen_indices[k], 1, b.modes, f);
    require(k == 0 || w.eigen_indices[k] > w.eigen_indices[k - 1], f, "must be increasing");
  }
  if (w.band)
  {
    require(finite(w.band->min) && w.band->min > 0.0, "wavenumbers.band.min", "must be positive");
    require(finite(w.band->max) && w.band->max > w.band->min, "wavenumbers.band.max",
            "must exceed band.min");
    check_range(w.band->points, 1, 10000, "wavenumbers.band.points");
  }

  require(finite(c.noise_level) && c.noise_level >= 0.0 && c.noise_level <= 1.0, "noise_level",
          "must lie in [0, 1]");
  require(!c.output_dir.empty(), "output_dir", "must not be empty");
  require(c.max_condition >= 1.0, "max_condition", "must be >= 1");

  const auto &sc = c.scan;
  require(finite(sc.re_min) && finite(sc.re_max) && sc.re_min <= sc.re_max, "scan.re_max",
          "must be >= scan.re_min");
  require(finite(sc.im_min) && finite(sc.im_max) && sc.im_min <= sc.im_max, "scan.im_max",
          "must be >= scan.im_min");
  check_range(sc.re_steps, 1, 10000, "scan.re_steps");
  check_range(sc.im_steps, 1, 10000, "scan.im_steps");
  check_range(sc.n_r, 2, specfun::kMaxGaussPoints, "scan.n_r");
  check_range(sc.n_theta, 2, specfun::kMaxGaussPoints, "scan.n_theta");
  check_range(sc.n_phi, 4, 2048, "scan.n_phi");

  require(finite(c.omega.A), "omega.A", "must be finite");
  require(finite(c.omega.C0) && c.omega.C0 >= 0.0, "omega.C0", "must be >= 0");
  require(finite(c.omega.delta) && c.omega.delta > 0.0 && c.omega.delta < 1.0 / (2.0 * c.R),
          "omega.delta", "must lie in (0, 1/(2R))");
}

ExperimentConfig config_from_json(const json &j)
{
  ExperimentConfig c;
  ObjectReader root(j, "");
  c.R = root.number("R", c.R);

  if (root.has("potential"))
  {
    ObjectReader p(root.sub("potential"), "potential");
    const auto kind = p.string("kind", std::string(spectral::to_string(c.potential.kind)));
    try
    {
      c.potential.kind = spectral::potential_kind_from_string(kind);
    }
    catch (const std::invalid_argument &)
    {
      throw ConfigError("potential.kind", "unknown kind '" + kind + "'");
    }
    c.potential.amplitude = p.number("amplitude", c.potential.amplitude);
    c.potential.support_radius = p.number("support_radius", c.potential.support_radius);
    p.finish();
  }

  if (root.has("source"))
  {
    ObjectReader s(root.sub("source"), "source");
    if (s.has("coefficients"))
    {
      const auto &arr = s.sub("coefficients");
      if (!arr.is_array())
      {
        throw ConfigError("source.coefficients", "expected an array of numbers");
      }
      for (std::size_t k = 0; k < arr.size(); ++k)
      {
        if (!arr[k].is_number())
        {
          throw ConfigError("source.coefficients[" + std::to_string(k) + "]", "expected a number");
        }
        c.source.coefficients.push_back(arr[k].get<double>());
      }
    }
    c.source.smoothness_order = s.integer("smoothness_order", c.source.smoothness_order);
    c.source.Q = s.number("Q", c.source.Q);
    s.finish();
  }

  if (root.has("quadrature"))
  {
    ObjectReader q(root.sub("quadrature"), "quadrature");
    auto &d = c.quadrature;
    d.n_r = q.integer("n_r", d.n_r);
    d.n_theta = q.integer("n_theta", d.n_theta);
    d.n_phi = q.integer("n_phi", d.n_phi);
    d.sphere_n_theta = q.integer("sphere_n_theta", d.sphere_n_theta);
    d.sphere_n_phi = q.integer("sphere_n_phi", d.sphere_n_phi);
    q.finish();
  }

  if (root.has("basis"))
  {
    ObjectReader b(root.sub("basis"), "basis");
    auto &d = c.basis;
    d.modes = b.integer("modes", d.modes);
    d.l_max = b.integer("l_max", d.l_max);
    d.n_max = b.integer("n_max", d.n_max);
    d.galerkin_J = b.integer("galerkin_J", d.galerkin_J);
    b.finish();
  }

  if (root.has("wavenumbers"))
  {
    ObjectReader w(root.sub("wavenumbers"), "wavenumbers");
    if (w.has("eigen_indices"))
    {
      const auto &arr = w.sub("eigen_indices");
      if (!arr.is_array())
      {
        throw ConfigError("wavenumbers.eigen_indices", "expected an array of integers");
      }
      for (std::size_t k = 0; k < arr.size(); ++k)
      {
        if (!arr[k].is_number_integer())
        {
          throw ConfigError("wavenumbers.eigen_indices[" + std::to_string(k) + "]",
                            "expected an integer");
        }
        c.wavenumbers.eigen_indices.push_back(static_cast<int>(arr[k].get<std::int64_t>()));
      }
    }
    if (w.has("band"))
    {
      ObjectReader b(w.sub("band"), "wavenumbers.band");
      BandConfig band;
      band.min = b.number("min", band.min);
      band.max = b.number("max", band.max);
      band.points = b.integer("points", band.points);
      b.finish();
      c.wavenumbers.band = band;
    }
    w.finish();
  }

  c.noise_level = root.number("noise_level", c.noise_level);
  c.seed = root.unsigned64("seed", c.seed);
  c.output_dir = root.string("output_dir", c.output_dir);
  c.max_condition = root.number("max_condition", c.max_condition);
  if (root.has("v_zero_weights"))
  {
    c.v_zero_weights = root.boolean("v_zero_weights", true);
  }

  if (root.has("scan"))
  {
    ObjectReader s(root.sub("scan"), "scan");
    auto &d = c.scan;
    d.re_min = s.number("re_min", d.re_min);
    d.re_max = s.number("re_max", d.re_max);
    d.im_min = s.number("im_min", d.im_min);
    d.im_max = s.number("im_max", d.im_max);
    d.re_steps = s.integer("re_steps", d.re_steps);
    d.im_steps = s.integer("im_steps", d.im_steps);
    d.n_r = s.integer("n_r", d.n_r);
    d.n_theta = s.integer("n_theta", d.n_theta);
    d.n_phi = s.integer("n_phi", d.n_phi);
    s.finish();
  }

  if (root.has("omega"))
  {
    ObjectReader o(root.sub("omega"), "omega");
    c.omega.A = o.number("A", c.omega.A);
    c.omega.C0 = o.number("C0", c.omega.C0);
    c.omega.delta = o.number("delta", c.omega.delta);
    o.finish();
  }
  root.finish();
  validate(c);
  return c;
}

json to_json(const ExperimentConfig &c)
{
  json j;
  j["R"] = c.R;
  j["potential"] = {{"kind", std::string(spectral::to_string(c.potential.kind))},
                    {"amplitude", c.potential.amplitude},
                    {"support_radius", c.potential.support_radius}};
  j["source"] = {{"coefficients", c.source.coefficients},
                 {"smoothness_order", c.source.smoothness_order},
                 {"Q", c.source.Q}};
  j["quadrature"] = {{"n_r", c.quadrature.n_r},
                     {"n_theta", c.quadrature.n_theta},
                     {"n_phi", c.quadrature.n_phi},
                     {"sphere_n_theta", c.quadrature.sphere_n_theta},
                     {"sphere_n_phi", c.quadrature.sphere_n_phi}};
  j["basis"] = {{"modes", c.basis.modes},
                {"l_max", c.basis.l_max},
                {"n_max", c.basis.n_max},
                {"galerkin_J", c.basis.galerkin_J}};
  json w = json::object();
  if (!c.wavenumbers.eigen_indices.empty())
  {
    w["eigen_indices"] = c.wavenumbers.eigen_indices;
  }
  if (c.wavenumbers.band)
  {
    w["band"] = {{"min", c.wavenumbers.band->min},
                 {"max", c.wavenumbers.band->max},
                 {"points", c.wavenumbers.band->points}};
  }
  j["wavenumbers"] = w;
  j["noise_level"] = c.noise_level;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["max_condition"] = c.max_condition;
  if (c.v_zero_weights)
  {
    j["v_zero_weights"] = *c.v_zero_weights;
  }
  j["scan"] = {{"re_min", c.scan.re_min},   {"re_max", c.scan.re_max},
               {"im_min", c.scan.im_min},   {"im_max", c.scan.im_max},
               {"re_steps", c.scan.re_steps}, {"im_steps", c.scan.im_steps},
               {"n_r", c.scan.n_r},         {"n_theta", c.scan.n_theta},
               {"n_phi", c.scan.n_phi}};
  j["omega"] = {{"A", c.omega.A}, {"C0", c.omega.C0}, {"delta", c.omega.delta}};
  return j;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("<file>", "cannot open " + path.string());
  }
  json j;
  try
  {
    j = json::parse(in);
  }
  catch (const json::parse_error &e)
  {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace biharm::harness
