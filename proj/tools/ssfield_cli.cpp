#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssfield/config.hpp"
#include "ssfield/errors.hpp"
#include "ssfield/run.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Flags {
  std::string config_path, out, family, suite;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol, theta, gamma, d0, d1;
  std::optional<std::size_t> n_samples, pairs, shifts, r1, r2, n_reps;
  std::optional<int> workers;
  std::vector<double> H, s, t, x;
  bool echo = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--tol", f.tol, "check tolerance");
  sub->add_option("--n-samples", f.n_samples, "Monte Carlo sample count");
  sub->add_option("--spec", f.family, "field family");
  sub->add_option("--H", f.H, "Hurst indices, comma separated")->delimiter(',');
  sub->add_option("--theta", f.theta);
  sub->add_option("--gamma", f.gamma);
  sub->add_option("--d0", f.d0);
  sub->add_option("--d1", f.d1);
  sub->add_option("--workers", f.workers, "OpenMP threads (0: default)");
  sub->add_flag("--echo-config", f.echo, "print the validated config and exit");
}

json build(const std::string& command, const Flags& f) {
  json j = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ssf::ConfigError("cannot read config file " + f.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      j = json::parse(ss.str());
    } catch (const json::parse_error&) {
      // Re-parse through the validating path for a located diagnostic.
      ssf::parse_config(ss.str());
    }
    if (!j.is_object()) throw ssf::ConfigError("config file must hold a JSON object");
    if (j.contains("command") && j["command"] != command)
      throw ssf::ConfigError("command: config file says '" + j["command"].dump() + "' but '" + command +
                             "' was invoked");
  }
  j["command"] = command;
  if (!f.family.empty() && (!j.contains("spec") || j["spec"].value("family", "") != f.family))
    j["spec"] = {{"family", f.family}};
  auto spec_set = [&](const char* key, const json& v) {
    if (!j.contains("spec")) j["spec"] = {{"family", "fbs"}};
    j["spec"][key] = v;
  };
  if (!f.H.empty()) spec_set("H", f.H);
  if (f.theta) spec_set("theta", *f.theta);
  if (f.gamma) spec_set("gamma", *f.gamma);
  if (f.d0) spec_set("d0", *f.d0);
  if (f.d1) spec_set("d1", *f.d1);
  if (!f.s.empty()) j["s"] = f.s;
  if (!f.t.empty()) j["t"] = f.t;
  if (!f.x.empty()) j["x"] = f.x;
  if (!f.suite.empty()) j["suite"] = f.suite;
  if (!f.out.empty()) j["out"] = f.out;
  if (f.seed) j["seed"] = *f.seed;
  if (f.tol) j["tol"] = *f.tol;
  if (f.n_samples) j["n_samples"] = *f.n_samples;
  if (f.workers) j["workers"] = *f.workers;
  if (f.pairs) j["probes"]["pairs"] = *f.pairs;
  if (f.shifts) j["probes"]["shifts"] = *f.shifts;
  if (f.r1) j["limit"]["r1"] = *f.r1;
  if (f.r2) j["limit"]["r2"] = *f.r2;
  if (f.n_reps) j["limit"]["n_reps"] = *f.n_reps;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar Gaussian random fields: kernels, densities, checks and simulation"};
  app.require_subcommand(1);
  Flags f;

  auto* cov = app.add_subcommand("cov", "evaluate a covariance kernel K(s,t)");
  add_common(cov, f);
  cov->add_option("--s", f.s)->delimiter(',');
  cov->add_option("--t", f.t)->delimiter(',');

  auto* density = app.add_subcommand("density", "evaluate the spectral density of the Lamperti transform");
  add_common(density, f);
  density->add_option("--x", f.x)->delimiter(',');

  auto* check = app.add_subcommand("check", "run a check suite");
  add_common(check, f);
  check->add_option("--suite", f.suite, "lemmas, densities, criteria or ma");

  auto* classify = app.add_subcommand("classify", "classify increment stationarity");
  add_common(classify, f);
  classify->add_option("--pairs", f.pairs);
  classify->add_option("--shifts", f.shifts);

  auto* simulate = app.add_subcommand("simulate", "sample a field on a grid");
  add_common(simulate, f);

  auto* mc = app.add_subcommand("mc", "Monte Carlo increment stationarity");
  add_common(mc, f);
  mc->add_option("--pairs", f.pairs);
  mc->add_option("--shifts", f.shifts);

  auto* limit = app.add_subcommand("limit-demo", "partial sums of an iid lattice field");
  add_common(limit, f);
  limit->add_option("--r1", f.r1);
  limit->add_option("--r2", f.r2);
  limit->add_option("--n-reps", f.n_reps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ssf::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  ssf::RunConfig config;
  try {
    config = ssf::parse_config(build(command, f).dump());
  } catch (const ssf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ssf::kExitConfig;
  }
  if (f.echo) {
    std::cout << ssf::config_to_json(config) << "\n";
    return ssf::kExitOk;
  }
  return ssf::run(config, std::cout);
}
