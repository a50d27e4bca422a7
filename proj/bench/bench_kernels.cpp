#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "ssfield/config.hpp"
#include "ssfield/field.hpp"
#include "ssfield/increments.hpp"
#include "ssfield/simulate.hpp"

using namespace ssf;

namespace {

double seconds(const std::function<void()>& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-34s %10.4f %10.4f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  CovKernel K = make_kernel(default_spec("strict2d"));
  Grid g = Grid::regular(2, 0.1, 3.0, 30);
  report("cov_matrix strict2d 900 pts", seconds([&] { serial::cov_matrix(K, g); }),
         seconds([&] { cov_matrix(K, g); }));

  Matrix M = cov_matrix(K, Grid::regular(2, 0.5, 2.5, 12));
  report("cholesky_sample 144 pts x 4000", seconds([&] { serial::cholesky_sample(M, 1, 4000, "bench"); }),
         seconds([&] { cholesky_sample(M, 1, 4000, "bench"); }));

  SampleBatch b = cholesky_sample(M, 1, 4000, "bench");
  report("empirical_cov 144 pts x 4000", seconds([&] { serial::empirical_cov(b, &M); }),
         seconds([&] { empirical_cov(b, &M); }));

  auto tg = default_limit_grid();
  report("limit_partial_sums r=128 x 100", seconds([&] { serial::limit_partial_sums(128, 128, tg, 1, 100); }, 1),
         seconds([&] { limit_partial_sums(128, 128, tg, 1, 100); }, 1));

  CovKernel Y = make_kernel(default_spec("yhalf"));
  ProbePlan plan = ProbePlan::random(2);
  report("classify yhalf 20x10 probes", seconds([&] { serial::classify_stationarity(Y, plan); }),
         seconds([&] { classify_stationarity(Y, plan); }));
  return 0;
}
