#include "ssfield/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "ssfield/errors.hpp"
#include "ssfield/moving_average.hpp"

namespace ssf {

using json = nlohmann::ordered_json;

namespace {

struct Names {
  Command c;
  const char* name;
};
constexpr Names kCommands[] = {{Command::Cov, "cov"},           {Command::Density, "density"},
                               {Command::Check, "check"},       {Command::Classify, "classify"},
                               {Command::Simulate, "simulate"}, {Command::Mc, "mc"},
                               {Command::LimitDemo, "limit-demo"}};

const std::set<std::string> kSuites = {"lemmas", "densities", "criteria", "ma"};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void only_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

std::size_t get_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Point get_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of numbers");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return p;
}

std::vector<Point> get_points(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_point(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

HurstVector get_hurst(const json& j, const std::string& path) {
  Point p = get_point(j, path);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(p[i] > 0 && p[i] < 1))
      fail(path + "[" + std::to_string(i) + "]", "H must lie in (0,1), got " + json(p[i]).dump());
  return HurstVector(p);
}

std::pair<double, double> get_pair(const json& j, const std::string& path) {
  HurstVector H = get_hurst(j, path);
  if (H.size() != 2) fail(path, "this family needs exactly two Hurst indices");
  return {H[0], H[1]};
}

FieldSpec parse_spec(const json& j) {
  const std::string P = "spec";
  if (!j.is_object()) fail(P, "expected an object");
  if (!j.contains("family") || !j["family"].is_string()) fail(P + ".family", "missing family name");
  const std::string fam = j["family"].get<std::string>();
  auto num = [&](const char* key, double def) {
    return j.contains(key) ? get_number(j[key], P + "." + key) : def;
  };
  FieldSpec spec;
  try {
    spec = default_spec(fam);
  } catch (const ConfigError&) {
    fail(P + ".family", "unknown family '" + fam + "'");
  }
  if (fam == "fbs") {
    only_keys(j, P, {"family", "H"});
    if (j.contains("H")) spec = FbsSpec{get_hurst(j["H"], P + ".H")};
  } else if (fam == "strict") {
    only_keys(j, P, {"family", "H", "gamma", "K"});
    HurstVector H = j.contains("H") ? get_hurst(j["H"], P + ".H") : std::get<StrictGeneralSpec>(spec).H;
    if (j.contains("gamma") && j.contains("K")) fail(P, "give either gamma or K, not both");
    StrictWeights w = StrictWeights::uniform(H.size());
    try {
      if (j.contains("gamma")) w = StrictWeights::from_gamma(H.size(), get_point(j["gamma"], P + ".gamma"));
      else if (j.contains("K")) w = validate_weights(get_point(j["K"], P + ".K"), H);
      else if (!j.contains("H")) w = std::get<StrictGeneralSpec>(spec).weights;
    } catch (const WeightError& e) {
      fail(P + (j.contains("K") ? ".K" : ".gamma"), e.what());
    }
    spec = StrictGeneralSpec{H, w};
  } else if (fam == "strict2d") {
    only_keys(j, P, {"family", "H", "gamma"});
    auto s = std::get<Strict2DSpec>(spec);
    if (j.contains("H")) std::tie(s.H1, s.H2) = get_pair(j["H"], P + ".H");
    s.gamma = num("gamma", s.gamma);
    spec = s;
  } else if (fam == "mild_theta") {
    only_keys(j, P, {"family", "H", "theta"});
    auto s = std::get<MildThetaSpec>(spec);
    if (j.contains("H")) std::tie(s.H1, s.H2) = get_pair(j["H"], P + ".H");
    s.theta = num("theta", s.theta);
    spec = s;
  } else if (fam == "yhalf") {
    only_keys(j, P, {"family", "theta"});
    spec = YHalfSpec{num("theta", std::get<YHalfSpec>(spec).theta)};
  } else if (fam == "zhalf") {
    only_keys(j, P, {"family", "gamma"});
    spec = ZHalfSpec{num("gamma", std::get<ZHalfSpec>(spec).gamma)};
  } else {
    only_keys(j, P, {"family", "H", "d0", "d1"});
    auto s = std::get<MovingPairSpec>(spec);
    if (j.contains("H")) std::tie(s.H1, s.H2) = get_pair(j["H"], P + ".H");
    if (j.contains("H") || j.contains("d0") || j.contains("d1")) {
      if (!j.contains("d0") || !j.contains("d1")) fail(P, "moving_pair needs both d0 and d1");
      s.d0 = num("d0", 0);
      s.d1 = num("d1", 0);
    }
    auto dd = validate_dd(s.H1, s.H2, s.d0, s.d1);
    if ((s.H1 == 0.5) == (s.H2 == 0.5) && !dd.pass)
      fail(P, "d0^2 + 2 d0 d1 sin(pi H1) sin(pi H2) + d1^2 = 1 is violated, residual " +
                  json(dd.residual).dump());
    spec = s;
  }
  try {
    validate(spec);
  } catch (const std::exception& e) {
    fail(P, e.what());
  }
  return spec;
}

json spec_to_json(const FieldSpec& spec) {
  json j;
  j["family"] = family_name(spec);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FbsSpec>) {
          j["H"] = s.H.values();
        } else if constexpr (std::is_same_v<T, StrictGeneralSpec>) {
          j["H"] = s.H.values();
          j["gamma"] = s.weights.values();
        } else if constexpr (std::is_same_v<T, Strict2DSpec>) {
          j["H"] = {s.H1, s.H2};
          j["gamma"] = s.gamma;
        } else if constexpr (std::is_same_v<T, MildThetaSpec>) {
          j["H"] = {s.H1, s.H2};
          j["theta"] = s.theta;
        } else if constexpr (std::is_same_v<T, YHalfSpec>) {
          j["theta"] = s.theta;
        } else if constexpr (std::is_same_v<T, ZHalfSpec>) {
          j["gamma"] = s.gamma;
        } else {
          j["H"] = {s.H1, s.H2};
          j["d0"] = s.d0;
          j["d1"] = s.d1;
        }
      },
      spec);
  return j;
}

void require_dim(const std::optional<Point>& p, std::size_t N, const char* key, const char* cmd) {
  if (!p) fail(key, std::string("required by '") + cmd + "'");
  if (p->size() != N)
    fail(key, "expected " + std::to_string(N) + " coordinates, got " + std::to_string(p->size()));
}

void require_nonneg(const std::optional<Point>& p, const char* key) {
  for (double v : *p)
    if (v < 0) fail(key, "coordinates must be nonnegative");
}

void check_command(const RunConfig& c) {
  const std::size_t N = hurst_of(c.spec).size();
  const char* cmd = command_name(c.command);
  switch (c.command) {
    case Command::Cov:
      require_dim(c.s, N, "s", cmd);
      require_dim(c.t, N, "t", cmd);
      require_nonneg(c.s, "s");
      require_nonneg(c.t, "t");
      break;
    case Command::Density:
      if (!std::holds_alternative<FbsSpec>(c.spec))
        fail("spec.family", "'density' is defined for the fbs family");
      require_dim(c.x, N, "x", cmd);
      break;
    case Command::Check:
      if (!kSuites.count(c.suite)) fail("suite", "unknown suite '" + c.suite + "' (lemmas, densities, criteria, ma)");
      break;
    case Command::Simulate:
      if (c.n_samples < 2) fail("n_samples", "need at least 2 samples");
      if (c.grid.points.empty()) {
        if (c.grid.n == 0) fail("grid.n", "must be positive");
        if (!(c.grid.lo > 0 && c.grid.hi >= c.grid.lo)) fail("grid", "need 0 < lo <= hi");
        if (c.grid.n > 1 && c.grid.hi == c.grid.lo) fail("grid", "lo == hi gives duplicate points");
      } else {
        for (std::size_t i = 0; i < c.grid.points.size(); ++i) {
          const auto& p = c.grid.points[i];
          if (p.size() != N) fail("grid.points[" + std::to_string(i) + "]", "wrong dimension");
          for (double v : p)
            if (!(v > 0)) fail("grid.points[" + std::to_string(i) + "]", "coordinates must be positive");
        }
      }
      break;
    case Command::Classify:
    case Command::Mc:
      if (c.probes.pairs == 0) fail("probes.pairs", "must be positive");
      if (!(c.probes.u_box > 0)) fail("probes.u_box", "must be positive");
      if (!(c.probes.h_box >= 0)) fail("probes.h_box", "must be nonnegative");
      if (c.command == Command::Mc && c.n_samples < 2) fail("n_samples", "need at least 2 samples");
      break;
    case Command::LimitDemo:
      if (c.limit.r1 == 0 || c.limit.r1 > 512) fail("limit.r1", "must lie in [1, 512]");
      if (c.limit.r2 == 0 || c.limit.r2 > 512) fail("limit.r2", "must lie in [1, 512]");
      if (c.limit.n_reps == 0) fail("limit.n_reps", "must be positive");
      for (std::size_t i = 0; i < c.limit.t_grid.size(); ++i) {
        const auto& p = c.limit.t_grid[i];
        if (p.size() != 2) fail("limit.t_grid[" + std::to_string(i) + "]", "points must be 2-D");
        for (double v : p)
          if (!(v > 0 && v <= 16)) fail("limit.t_grid[" + std::to_string(i) + "]", "coordinates must lie in (0, 16]");
      }
      break;
  }
  if (!(c.tol > 0)) fail("tol", "must be positive");
  if (c.out.empty()) fail("out", "must be nonempty");
  if (c.workers < 0) fail("workers", "must be nonnegative");
}

}  // namespace

const char* command_name(Command c) {
  for (const auto& n : kCommands)
    if (n.c == c) return n.name;
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& n : kCommands)
    if (name == n.name) return n.c;
  throw ConfigError("command: unknown command '" + name + "'");
}

std::vector<Point> default_limit_grid() {
  std::vector<Point> g;
  for (double a : {0.5, 1.0, 1.5, 2.0})
    for (double b : {0.5, 1.0, 1.5, 2.0}) g.push_back({a, b});
  return g;
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  only_keys(j, "", {"command", "spec", "s", "t", "x", "suite", "grid", "probes", "limit", "seed",
                    "n_samples", "tol", "out", "workers"});
  RunConfig c;
  if (!j.contains("command") || !j["command"].is_string()) fail("command", "missing command name");
  c.command = parse_command(j["command"].get<std::string>());
  if (j.contains("spec")) c.spec = parse_spec(j["spec"]);
  if (j.contains("s")) c.s = get_point(j["s"], "s");
  if (j.contains("t")) c.t = get_point(j["t"], "t");
  if (j.contains("x")) c.x = get_point(j["x"], "x");
  if (j.contains("suite")) {
    if (!j["suite"].is_string()) fail("suite", "expected a string");
    c.suite = j["suite"].get<std::string>();
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    only_keys(g, "grid", {"lo", "hi", "n", "points"});
    if (g.contains("lo")) c.grid.lo = get_number(g["lo"], "grid.lo");
    if (g.contains("hi")) c.grid.hi = get_number(g["hi"], "grid.hi");
    if (g.contains("n")) c.grid.n = get_count(g["n"], "grid.n");
    if (g.contains("points")) c.grid.points = get_points(g["points"], "grid.points");
  }
  if (j.contains("probes")) {
    const json& p = j["probes"];
    only_keys(p, "probes", {"pairs", "shifts", "u_box", "h_box"});
    if (p.contains("pairs")) c.probes.pairs = get_count(p["pairs"], "probes.pairs");
    if (p.contains("shifts")) c.probes.shifts = get_count(p["shifts"], "probes.shifts");
    if (p.contains("u_box")) c.probes.u_box = get_number(p["u_box"], "probes.u_box");
    if (p.contains("h_box")) c.probes.h_box = get_number(p["h_box"], "probes.h_box");
  }
  if (j.contains("limit")) {
    const json& l = j["limit"];
    only_keys(l, "limit", {"r1", "r2", "n_reps", "t_grid"});
    if (l.contains("r1")) c.limit.r1 = get_count(l["r1"], "limit.r1");
    if (l.contains("r2")) c.limit.r2 = get_count(l["r2"], "limit.r2");
    if (l.contains("n_reps")) c.limit.n_reps = get_count(l["n_reps"], "limit.n_reps");
    if (l.contains("t_grid")) c.limit.t_grid = get_points(l["t_grid"], "limit.t_grid");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      fail("seed", "expected an unsigned 64-bit integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("n_samples")) c.n_samples = get_count(j["n_samples"], "n_samples");
  if (j.contains("tol")) c.tol = get_number(j["tol"], "tol");
  if (j.contains("out")) {
    if (!j["out"].is_string()) fail("out", "expected a string");
    c.out = j["out"].get<std::string>();
  }
  if (j.contains("workers")) c.workers = static_cast<int>(get_count(j["workers"], "workers"));
  check_command(c);
  return c;
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["spec"] = spec_to_json(c.spec);
  if (c.s) j["s"] = *c.s;
  if (c.t) j["t"] = *c.t;
  if (c.x) j["x"] = *c.x;
  j["suite"] = c.suite;
  j["grid"] = {{"lo", c.grid.lo}, {"hi", c.grid.hi}, {"n", c.grid.n}};
  if (!c.grid.points.empty()) j["grid"]["points"] = c.grid.points;
  j["probes"] = {{"pairs", c.probes.pairs}, {"shifts", c.probes.shifts}, {"u_box", c.probes.u_box},
                 {"h_box", c.probes.h_box}};
  j["limit"] = {{"r1", c.limit.r1}, {"r2", c.limit.r2}, {"n_reps", c.limit.n_reps}};
  if (!c.limit.t_grid.empty()) j["limit"]["t_grid"] = c.limit.t_grid;
  j["seed"] = c.seed;
  j["n_samples"] = c.n_samples;
  j["tol"] = c.tol;
  j["out"] = c.out;
  j["workers"] = c.workers;
  return j.dump(2);
}

}  // namespace ssf
