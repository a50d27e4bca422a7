// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "ssfield/field.hpp"
#include "ssfield/increments.hpp"
#include "ssfield/lamperti.hpp"
#include "ssfield/moving_average.hpp"
#include "ssfield/oracles.hpp"
#include "ssfield/rng.hpp"
#include "ssfield/simulate.hpp"
#include "ssfield/special_fn.hpp"
#include "ssfield/spectral.hpp"

using namespace ssf;

namespace {

constexpr std::uint64_t kSeed = 20161011;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string printf_str(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Uniforms {
  std::uint64_t stream, i = 0;
  double operator()(double lo, double hi) { return lo + (hi - lo) * uniform_at(kSeed, stream, i++); }
};

Outcome oracle_suite() {
  auto t0 = std::chrono::steady_clock::now();
  auto rows = lemma_sweep();
  double worst = 0;
  for (const auto& r : rows) worst = std::max(worst, r.abs_err);
  double secs = elapsed_since(t0);
  bool ok = rows.size() >= 48 && worst <= 1e-6 && secs < 60;
  return {ok, printf_str("%zu cases, max |numeric - closed| = %.2e", rows.size(), worst)};
}

Outcome density_reduction() {
  double worst = 0;
  for (int i = -1000; i <= 1000; ++i) {
    double x = 0.01 * i;
    worst = std::max(worst, std::abs(g_fbm(0.5, x) - g_w(x)) / g_w(x));
  }
  return {worst <= 1e-10, printf_str("max relative deviation %.2e on 2001 points", worst)};
}

Outcome fourier_reconstruction() {
  double worst1 = 0;
  for (double H : {0.1, 0.3, 0.7, 0.9}) {
    auto f = fbm_density({H});
    for (int i = 0; i <= 24; ++i) {
      double v = -3 + 0.25 * i;
      worst1 = std::max(worst1, std::abs(cov_from_density(f, Point{v}).value - c_fbs_factor(H, v)));
    }
  }
  HurstVector H{0.3, 0.7};
  auto f = fbm_density(H);
  FourierOptions joint;
  joint.use_factors = false;
  double worst2 = 0;
  for (int i = 0; i <= 10; ++i)
    for (int j = 0; j <= 10; ++j) {
      Point v{-3 + 0.6 * i, -3 + 0.6 * j};
      worst2 = std::max(worst2, std::abs(cov_from_density(f, v, joint).value - c_fbs_stationary(H, v)));
    }
  HurstVector H2{0.3, 0.7};
  SpectralDensity shown(2, [H2](PointView x) { return g_product_displayed(H2, x); }, {1.6, 2.4});
  double mass = cov_from_density(shown, Point{0, 0}).value;
  bool ok = worst1 <= 1e-4 && worst2 <= 1e-4;
  return {ok, printf_str("N=1 max err %.2e (4 H x 25 v); N=2 11x11 joint 2-D quadrature max err %.2e; "
                         "single-prefactor product has mass %.6f = 2 pi, unit mass needs (2 pi)^-N",
                         worst1, worst2, mass)};
}

Outcome fbm_spectral() {
  Uniforms u{7};
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    double H = u(0.05, 0.95), s = u(0.5, 4), t = u(0.5, 4);
    auto r = fbm_spectral_cov_check(H, s, t);
    worst = std::max(worst, std::abs(r.spectral - r.closed));
  }
  return {worst <= 1e-4, printf_str("50 random (H,s,t), max err %.2e", worst)};
}

Outcome mild_criterion() {
  double worst = 0;
  for (auto [H1, H2] : {std::pair{0.3, 0.7}, {0.5, 0.5}, {0.25, 0.25}})
    for (double th : {-1.0, -0.5, 0.5, 1.0}) {
      StationaryCov C(2, [=](PointView v) { return c_theta(H1, H2, th, v); });
      for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
          Point v{-3 + 0.3 * i, -3 + 0.3 * j};
          worst = std::max(worst, std::abs(mild_criterion_residual(C, {H1, H2}, v)));
        }
    }
  return {worst <= 1e-12, printf_str("12 (H, theta) cases on 21x21, max residual %.2e", worst)};
}

Outcome increment_algebra() {
  Uniforms u{8};
  double worst_var = 0, worst_y = 0;
  for (const FieldSpec& spec : {FieldSpec{FbsSpec{{0.3, 0.7}}}, FieldSpec{Strict2DSpec{0.3, 0.7, 0.5}}}) {
    auto K = make_kernel(spec);
    for (int i = 0; i < 100; ++i) {
      Point s{u(0, 3), u(0, 3)}, t{s[0] + u(0.01, 2), s[1] + u(0.01, 2)};
      double law = std::pow(t[0] - s[0], 0.6) * std::pow(t[1] - s[1], 1.4);
      Rectangle r(s, t);
      worst_var = std::max(worst_var, std::abs(increment_cov(K, r, r) - law));
    }
  }
  for (int i = 0; i < 100; ++i) {
    double th = u(-1, 1);
    Point h{u(0, 3), u(0, 3)}, s{u(0.05, 2), u(0.05, 2)};
    Point t{s[0] + u(0.01, 2), s[1] + u(0.01, 2)};
    auto K = make_kernel(YHalfSpec{th});
    double bil = increment_cov(K, {h, {h[0] + s[0], h[1] + s[1]}}, {h, {h[0] + t[0], h[1] + t[1]}});
    worst_y = std::max(worst_y, std::abs(y_half_increment_cov_closed(th, h, s, t) - bil));
  }
  bool ok = worst_var <= 1e-10 && worst_y <= 1e-10;
  return {ok, printf_str("volume law max err %.2e (200 rectangles); Y closed vs bilinear max err %.2e",
                         worst_var, worst_y)};
}

Outcome class_separation() {
  auto t0 = std::chrono::steady_clock::now();
  auto plan = ProbePlan::random(2);
  auto v_fbs = classify_stationarity(make_kernel(FbsSpec{{0.3, 0.7}}), plan).verdict;
  auto v_s2d = classify_stationarity(make_kernel(Strict2DSpec{0.3, 0.7, 0.5}), plan).verdict;
  auto v_y = classify_stationarity(make_kernel(YHalfSpec{1}), plan).verdict;
  bool cls = v_fbs == IncrementClass::StrictWide && v_s2d == IncrementClass::StrictWide &&
             v_y == IncrementClass::MildOnly;

  Rectangle r1({0, 0}, {1, 1}), r2({1, 0}, {2, 2});
  const double theta = 1, gamma = 1;
  double y_ref = theta / 16, z_ref = 4 * gamma * std::log(2.0) * std::log(2.0) / (kPi * kPi);
  double y_cl = increment_cov(make_kernel(YHalfSpec{theta}), r1, r2);
  double z_cl = increment_cov(make_kernel(ZHalfSpec{gamma}), r1, r2);
  bool closed = std::abs(y_cl - y_ref) <= 1e-14 && std::abs(z_cl - z_ref) <= 1e-14;
  auto y_mc = mc_increment_cov(YHalfSpec{theta}, r1, r2, kSeed, 20000);
  auto z_mc = mc_increment_cov(ZHalfSpec{gamma}, r1, r2, kSeed + 1, 20000);
  bool mc = std::abs(y_mc.estimate - y_ref) <= 4 * y_mc.se && std::abs(z_mc.estimate - z_ref) <= 4 * z_mc.se;
  double secs = elapsed_since(t0);
  return {cls && closed && mc && secs < 120,
          printf_str("fBs %s, Strict2D %s, Y %s; theta/16 = %.6f (MC %.4f +- %.4f), "
                     "4 gamma log^2 2 / pi^2 = %.6f (MC %.4f +- %.4f)",
                     to_string(v_fbs), to_string(v_s2d), to_string(v_y), y_cl, y_mc.estimate, y_mc.se,
                     z_cl, z_mc.estimate, z_mc.se)};
}

Outcome moving_average() {
  Uniforms u{9};
  auto g = moving_pair_kernel(0.3, 0.7, 1, 0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    Point s{u(0.1, 3), u(0.1, 3)}, t{u(0.1, 3), u(0.1, 3)};
    worst = std::max(worst, std::abs(cov_from_ma(g, s, t).value - cov_fbs({0.3, 0.7}, s, t)));
  }
  double b = 2 * std::sin(0.3 * kPi) * std::sin(0.7 * kPi), worst_dd = 0;
  for (double d0 : {0.0, 0.5, -0.6}) {
    double d1 = -0.5 * b * d0 + std::sqrt(0.25 * b * b * d0 * d0 - d0 * d0 + 1);
    if (!validate_dd(0.3, 0.7, d0, d1).pass) return {false, "constructed pair off the constraint curve"};
    auto c = cov_from_ma(moving_pair_kernel(0.3, 0.7, d0, d1), Point{1, 1}, Point{1, 1});
    worst_dd = std::max(worst_dd, std::abs(c.value - 1));
  }
  double half = std::abs(cov_from_ma(moving_pair_kernel(0.5, 0.5, 0, 1), Point{1, 1}, Point{1, 1}).value - 1);
  bool ok = worst <= 1e-3 && worst_dd <= 1e-3 && half <= 1e-3;
  return {ok, printf_str("fBs match max err %.2e; unit variance on the constraint curve max err %.2e; "
                         "H = 1/2 pair (0,1) variance err %.2e",
                         worst, worst_dd, half)};
}

Outcome simulation_fidelity() {
  auto grid = Grid::regular(2, 0.5, 2.5, 5);
  std::vector<FieldSpec> specs{FbsSpec{{0.3, 0.7}}, Strict2DSpec{0.3, 0.7, 0.5}, MildThetaSpec{0.3, 0.7, 0.5},
                               YHalfSpec{1}, ZHalfSpec{1}};
  std::string detail;
  bool ok = true;
  for (const auto& spec : specs) {
    Matrix A = cov_matrix(make_kernel(spec), grid);
    SampleBatch one, four;
    int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    one = sample_field(spec, grid, kSeed, 5000);
    omp_set_num_threads(4);
    four = sample_field(spec, grid, kSeed, 5000);
    omp_set_num_threads(saved);
    auto again = sample_field(spec, grid, kSeed, 5000);
    bool bitwise = one.values == four.values && one.values == again.values;
    auto e = empirical_cov(one, &A);
    std::size_t in = 0;
    for (std::size_t i = 0; i < A.a.size(); ++i) in += std::abs(e.cov.a[i] - A.a[i]) <= 4 * e.se.a[i];
    double frac = double(in) / double(A.a.size());
    ok = ok && bitwise && frac >= 0.95;
    detail += printf_str("%s%s %.1f%%%s", detail.empty() ? "" : ", ", family_name(spec).c_str(), 100 * frac,
                         bitwise ? "" : " NOT bitwise reproducible");
  }
  return {ok, detail + " within 4 SE; bitwise identical across runs and 1 vs 4 threads"};
}

Outcome limit_demo() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Point> tg;
  for (double a : {0.5, 1.0, 1.5, 2.0})
    for (double b : {0.5, 1.0, 1.5, 2.0}) tg.push_back({a, b});
  auto rep = limit_partial_sums(256, 256, tg, kSeed, 2000);
  std::size_t in = 0;
  double worst = 0;
  for (const auto& c : rep.cells) {
    double dev = std::abs(c.estimate - c.brownian);
    in += dev <= 0.05 * std::abs(c.brownian) + 4 * c.se;
    worst = std::max(worst, dev / c.se);
  }
  double secs = elapsed_since(t0);
  bool ok = in == rep.cells.size() && secs < 300;
  return {ok, printf_str("%zu/%zu cells within 5%% + 4 SE of the Brownian sheet, max |dev|/SE %.2f", in,
                         rep.cells.size(), worst)};
}

}  // namespace

int main() {
  criterion(1, "integral oracle suite", oracle_suite);
  criterion(2, "density reduction at H = 1/2", density_reduction);
  criterion(3, "Fourier reconstruction of C_fBs", fourier_reconstruction);
  criterion(4, "fBm spectral representation", fbm_spectral);
  criterion(5, "mild criterion for C_theta", mild_criterion);
  criterion(6, "increment algebra", increment_algebra);
  criterion(7, "class separation", class_separation);
  criterion(8, "moving-average equivalence", moving_average);
  criterion(9, "simulation fidelity", simulation_fidelity);
  criterion(10, "limit demonstration", limit_demo);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
