#include "ssfield/run.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "ssfield/checks.hpp"
#include "ssfield/csv.hpp"
#include "ssfield/errors.hpp"
#include "ssfield/increments.hpp"
#include "ssfield/oracles.hpp"
#include "ssfield/simulate.hpp"
#include "ssfield/spectral.hpp"

namespace ssf {
namespace {

namespace fs = std::filesystem;

std::string path_in(const RunConfig& c, const char* name) { return (fs::path(c.out) / name).string(); }

std::string point_str(PointView p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt(p[i]);
  return s + ")";
}

std::string complex_str(Complex z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

std::vector<std::string> coord_header(const char* prefix, std::size_t N) {
  std::vector<std::string> h;
  for (std::size_t k = 0; k < N; ++k) h.push_back(prefix + std::to_string(k + 1));
  return h;
}

const char* expected_verdict(ClaimedClass c) {
  switch (c) {
    case ClaimedClass::Strict: return "STRICT_WIDE";
    case ClaimedClass::MildOnly: return "MILD_ONLY";
    case ClaimedClass::None: return "NONE";
  }
  return "?";
}

int run_cov(const RunConfig& c, std::ostream& log) {
  CovKernel K = make_kernel(c.spec);
  double v = K(*c.s, *c.t);
  const std::size_t N = K.dim();
  std::vector<std::string> header{"family"};
  for (auto& h : coord_header("s", N)) header.push_back(h);
  for (auto& h : coord_header("t", N)) header.push_back(h);
  header.push_back("value");
  CsvWriter w(path_in(c, "cov.csv"), header);
  std::vector<std::string> row{K.name()};
  for (double x : *c.s) row.push_back(fmt(x));
  for (double x : *c.t) row.push_back(fmt(x));
  row.push_back(fmt(v));
  w.row(row);
  log << "cov " << K.name() << " s=" << point_str(*c.s) << " t=" << point_str(*c.t) << ": " << fmt(v) << "\n";
  return kExitOk;
}

int run_density(const RunConfig& c, std::ostream& log) {
  HurstVector H = hurst_of(c.spec);
  double g = g_product(H, *c.x);
  auto header = coord_header("x", H.size());
  header.push_back("density");
  CsvWriter w(path_in(c, "density.csv"), header);
  std::vector<std::string> row;
  for (double x : *c.x) row.push_back(fmt(x));
  row.push_back(fmt(g));
  w.row(row);
  log << "density fbs x=" << point_str(*c.x) << ": " << fmt(g) << "\n";
  return kExitOk;
}

int run_check(const RunConfig& c, std::ostream& log) {
  std::size_t failed = 0, total = 0;
  if (c.suite == "lemmas") {
    auto rows = lemma_sweep(c.tol);
    CsvWriter w(path_in(c, "lemmas.csv"), {"lemma", "params", "numeric", "closed", "abs_err", "pass"});
    for (const auto& r : rows) {
      w.row({r.lemma, r.params, complex_str(r.numeric), complex_str(r.closed), fmt(r.abs_err),
             r.pass ? "true" : "false"});
      ++total;
      if (!r.pass) {
        ++failed;
        log << "FAIL " << r.lemma << " " << r.params << " abs_err=" << fmt(r.abs_err) << "\n";
      }
    }
  } else {
    std::vector<CheckRow> rows = c.suite == "densities" ? density_suite(c.seed)
                                 : c.suite == "criteria" ? criteria_suite(c.seed)
                                                         : ma_suite(c.seed);
    CsvWriter w(path_in(c, (c.suite + ".csv").c_str()),
                {"check", "params", "value", "reference", "abs_err", "tol", "pass"});
    for (const auto& r : rows) {
      w.row({r.check, r.params, fmt(r.value), fmt(r.reference), fmt(r.abs_err), fmt(r.tol),
             r.pass ? "true" : "false"});
      ++total;
      if (!r.pass) {
        ++failed;
        log << "FAIL " << r.check << " " << r.params << " abs_err=" << fmt(r.abs_err) << " tol=" << fmt(r.tol) << "\n";
      }
    }
  }
  log << "check " << c.suite << ": " << (total - failed) << "/" << total << " passed\n";
  return failed ? kExitCheckFailed : kExitOk;
}

ProbePlan plan_of(const RunConfig& c, std::size_t N) {
  return ProbePlan::random(N, c.seed, c.probes.pairs, c.probes.shifts, c.probes.u_box, c.probes.h_box);
}

int run_classify(const RunConfig& c, std::ostream& log) {
  CovKernel K = make_kernel(c.spec);
  auto rep = classify_stationarity(K, plan_of(c, K.dim()));
  {
    CsvWriter w(path_in(c, "classify.csv"), {"pair", "shift", "kind", "value", "reference", "residual"});
    for (const auto& r : rep.rows)
      w.row({fmt(r.pair), fmt(r.shift), to_string(r.kind), fmt(r.value), fmt(r.reference), fmt(r.residual)});
  }
  const char* verdict = to_string(rep.verdict);
  bool ok = std::string(verdict) == expected_verdict(K.claimed());
  CsvWriter s(path_in(c, "classify_summary.csv"),
              {"family", "claimed", "verdict", "max_variance_residual", "max_cross_residual",
               "invariance_tol", "violation_tol", "pass"});
  s.row({K.name(), expected_verdict(K.claimed()), verdict, fmt(rep.max_variance_residual),
         fmt(rep.max_cross_residual), fmt(rep.options.invariance_tol), fmt(rep.options.violation_tol),
         ok ? "true" : "false"});
  log << "classify " << K.name() << ": " << verdict << " (max variance residual "
      << fmt(rep.max_variance_residual) << ", max cross residual " << fmt(rep.max_cross_residual)
      << "; claimed " << expected_verdict(K.claimed()) << ")\n";
  return ok ? kExitOk : kExitCheckFailed;
}

const std::vector<std::string> kReportHeader = {"probe", "statistic", "estimate", "SE", "reference", "z"};

int run_simulate(const RunConfig& c, std::ostream& log) {
  CovKernel K = make_kernel(c.spec);
  Grid grid = c.grid.points.empty() ? Grid::regular(K.dim(), c.grid.lo, c.grid.hi, c.grid.n) : Grid(c.grid.points);
  Matrix M = cov_matrix(K, grid);
  SampleBatch b = cholesky_sample(M, c.seed, c.n_samples, K.name());
  EmpiricalCov e = empirical_cov(b, &M);
  {
    auto header = coord_header("t", K.dim());
    header.insert(header.begin(), "index");
    CsvWriter w(path_in(c, "grid.csv"), header);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<std::string> row{fmt(i)};
      for (double x : grid[i]) row.push_back(fmt(x));
      w.row(row);
    }
  }
  {
    CsvWriter w(path_in(c, "samples.csv"), {"rep", "point", "value"});
    for (std::size_t r = 0; r < b.n_samples; ++r)
      for (std::size_t i = 0; i < b.n_points; ++i) w.row({fmt(r), fmt(i), fmt(b(r, i))});
  }
  std::size_t inside = 0, total = 0;
  {
    CsvWriter w(path_in(c, "report.csv"), kReportHeader);
    for (std::size_t i = 0; i < M.n; ++i)
      for (std::size_t j = i; j < M.n; ++j) {
        double z = (e.cov(i, j) - M(i, j)) / e.se(i, j);
        w.row({fmt(i) + "-" + fmt(j), "cov", fmt(e.cov(i, j)), fmt(e.se(i, j)), fmt(M(i, j)), fmt(z)});
        ++total;
        if (std::abs(z) <= 4) ++inside;
      }
  }
  double frac = static_cast<double>(inside) / static_cast<double>(total);
  bool ok = frac >= 0.95;
  log << "simulate " << K.name() << ": " << inside << "/" << total << " covariance entries within 4 SE ("
      << fmt(100 * frac) << "%), jitter " << fmt(b.jitter) << (ok ? "" : " FAIL") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int run_mc(const RunConfig& c, std::ostream& log) {
  const std::size_t N = hurst_of(c.spec).size();
  auto rep = mc_increment_stationarity(c.spec, plan_of(c, N), c.seed, c.n_samples);
  CsvWriter w(path_in(c, "mc.csv"), kReportHeader);
  for (const auto& r : rep.rows)
    w.row({"pair=" + fmt(r.pair) + " shift=" + fmt(r.shift), to_string(r.kind), fmt(r.estimate), fmt(r.se),
           fmt(r.reference), fmt(r.z)});
  ClaimedClass claimed = claimed_class(c.spec);
  bool var_ok = rep.max_abs_z_variance <= 4;
  bool cross_ok = rep.max_abs_z_cross <= 4;
  bool ok = var_ok && (claimed != ClaimedClass::Strict || cross_ok);
  log << "mc " << family_name(c.spec) << ": " << to_string(rep.verdict) << " (max |z| variance "
      << fmt(rep.max_abs_z_variance) << ", cross " << fmt(rep.max_abs_z_cross) << "; claimed "
      << expected_verdict(claimed) << ")" << (ok ? "" : " FAIL") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int run_limit(const RunConfig& c, std::ostream& log) {
  auto grid = c.limit.t_grid.empty() ? default_limit_grid() : c.limit.t_grid;
  auto rep = limit_partial_sums(c.limit.r1, c.limit.r2, grid, c.seed, c.limit.n_reps);
  CsvWriter w(path_in(c, "limit.csv"), kReportHeader);
  std::size_t bad = 0;
  for (const auto& cell : rep.cells) {
    double z = (cell.estimate - cell.brownian) / cell.se;
    w.row({"s=" + point_str(cell.s) + " t=" + point_str(cell.t), "cov", fmt(cell.estimate), fmt(cell.se),
           fmt(cell.brownian), fmt(z)});
    if (std::abs(cell.estimate - cell.brownian) > 0.05 * std::abs(cell.brownian) + 4 * cell.se) ++bad;
  }
  log << "limit-demo r=(" << c.limit.r1 << "," << c.limit.r2 << ") reps=" << c.limit.n_reps << ": "
      << (rep.cells.size() - bad) << "/" << rep.cells.size()
      << " cells within 5% + 4 SE of the Brownian sheet\n";
  return bad ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& log) {
  if (c.workers > 0) omp_set_num_threads(c.workers);
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) {
    log << "error: cannot create output directory " << c.out << ": " << ec.message() << "\n";
    return kExitConfig;
  }
  try {
    for (const auto& w : validate(c.spec)) log << "warning: " << w << "\n";
    switch (c.command) {
      case Command::Cov: return run_cov(c, log);
      case Command::Density: return run_density(c, log);
      case Command::Check: return run_check(c, log);
      case Command::Classify: return run_classify(c, log);
      case Command::Simulate: return run_simulate(c, log);
      case Command::Mc: return run_mc(c, log);
      case Command::LimitDemo: return run_limit(c, log);
    }
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace ssf
