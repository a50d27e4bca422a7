#include "ssfield/checks.hpp"

#include <cmath>
#include <cstdio>

#include "ssfield/field.hpp"
#include "ssfield/increments.hpp"
#include "ssfield/lamperti.hpp"
#include "ssfield/moving_average.hpp"
#include "ssfield/quadrature.hpp"
#include "ssfield/rng.hpp"
#include "ssfield/special_fn.hpp"
#include "ssfield/spectral.hpp"

namespace ssf {
namespace {

std::string fmtp(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}
std::string fmtp(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}
std::string fmtp(const char* f, double a, double b, double c) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}
std::string fmtp(const char* f, double a, double b, double c, double d) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<double> grid_1d(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

}  // namespace

CheckRow make_row(std::string check, std::string params, double value, double reference, double tol) {
  double err = std::abs(value - reference);
  return {std::move(check), std::move(params), value, reference, err, tol, err <= tol};
}

double g_fbm_from_cov(double H, double x, double tol) {
  QuadOptions opt;
  opt.abs_tol = tol;
  Integrand<double> f = [&](double v) { return std::cos(x * v) * c_fbs_factor(H, v); };
  // C_fBs(v) = 1 - |v|^{2H} / 2 + ... near the origin; exponential decay beyond.
  auto head = integrate_finite<double>(f, 0, 1, opt, {0.5, 0});
  auto tail = x != 0 ? integrate_oscillatory_tail<double>(f, 1, std::abs(x), opt)
                     : integrate_algebraic_tail<double>(f, 1, 3, opt);
  return (head.value + tail.value) / kPi;
}

std::vector<CheckRow> density_suite(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  double worst = 0;
  for (int i = -1000; i <= 1000; ++i) {
    double x = i * 0.01;
    worst = std::max(worst, std::abs(g_fbm(0.5, x) - g_w(x)) / g_w(x));
  }
  rows.push_back(make_row("reduction_half", "x in [-10,10] step 0.01, max rel", worst, 0, 1e-10));
  for (double H : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double v = 0;
    auto m = cov_from_density(fbm_density(HurstVector{H}), PointView(&v, 1));
    rows.push_back(make_row("mass", fmtp("H=%g", H), m.value, 1, 1e-6));
  }
  rows.push_back(make_row("inverse_cosine", "H=0.3 x=1", g_fbm(0.3, 1), g_fbm_from_cov(0.3, 1), 1e-8));
  for (double H : {0.1, 0.3, 0.7, 0.9})
    for (double v : grid_1d(-3, 3, 13)) {
      auto c = cov_from_density(fbm_density(HurstVector{H}), PointView(&v, 1));
      rows.push_back(make_row("fourier_1d", fmtp("H=%g v=%g", H, v), c.value, c_fbs_factor(H, v), 1e-4));
    }
  HurstVector H2{0.3, 0.7};
  SpectralDensity sep = fbm_density(H2);
  for (double v1 : grid_1d(-3, 3, 11))
    for (double v2 : grid_1d(-3, 3, 11)) {
      Point v{v1, v2};
      auto c = cov_from_density(sep, v);
      rows.push_back(make_row("fourier_2d", fmtp("H=(0.3,0.7) v=(%g,%g)", v1, v2), c.value,
                              c_fbs_stationary(H2, v), 1e-4));
    }
  SpectralDensity joint(2, [](PointView x) { return g_product({0.3, 0.7}, x); }, {1.6, 2.4});
  for (Point v : {Point{0, 0}, Point{-3, 1.5}, Point{3, 3}}) {
    auto c = cov_from_density(joint, v);
    rows.push_back(make_row("fourier_2d_joint", fmtp("H=(0.3,0.7) v=(%g,%g)", v[0], v[1]), c.value,
                            c_fbs_stationary(H2, v), 1e-4));
  }
  std::uint64_t idx = 0;
  for (int i = 0; i < 50; ++i) {
    double H = 0.05 + 0.9 * uniform_at(seed, 7, idx++);
    double s = 0.5 + 3.5 * uniform_at(seed, 7, idx++);
    double t = 0.5 + 3.5 * uniform_at(seed, 7, idx++);
    auto r = fbm_spectral_cov_check(H, s, t);
    rows.push_back(make_row("fbm_spectral", fmtp("H=%.6f s=%.6f t=%.6f", H, s, t), r.spectral, r.closed, 1e-4));
  }
  return rows;
}

std::vector<CheckRow> criteria_suite(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const auto vg = grid_1d(-3, 3, 21);
  for (HurstVector H : {HurstVector{0.3, 0.7}, HurstVector{0.5, 0.5}, HurstVector{0.25, 0.25}})
    for (double theta : {-1.0, -0.5, 0.5, 1.0}) {
      StationaryCov C(2, [&](PointView v) { return c_theta(H[0], H[1], theta, v); });
      double worst = 0;
      for (double a : vg)
        for (double b : vg) worst = std::max(worst, std::abs(mild_criterion_residual(C, H, Point{a, b})));
      rows.push_back(make_row("mild_c_theta", fmtp("H=(%g,%g) theta=%g 21x21 max", H[0], H[1], theta),
                              worst, 0, 1e-12));
    }
  {
    HurstVector H{0.3, 0.7};
    StationaryCov C(2, [&](PointView v) {
      return c_fbs_stationary(H, v) + 0.1 * std::exp(-std::abs(v[0]) - std::abs(v[1]));
    });
    for (Point v : {Point{0.5, -1}, Point{2, 0.25}}) {
      double expect = 4 * 0.1 * std::exp(-std::abs(v[0]) - std::abs(v[1]));
      rows.push_back(make_row("mild_even_perturbation", fmtp("v=(%g,%g)", v[0], v[1]),
                              mild_criterion_residual(C, H, v), expect, 1e-12));
    }
  }
  for (const auto& fam : {"fbs", "strict", "strict2d", "mild_theta", "yhalf", "zhalf", "moving_pair"}) {
    CovKernel K = make_kernel(default_spec(fam));
    StationaryCov C = lamperti_forward(K);
    double worst = 0;
    std::uint64_t idx = 0;
    for (int i = 0; i < 100; ++i) {
      Point s(K.dim()), t(K.dim());
      for (auto& x : s) x = 0.05 + 3 * uniform_at(seed, 11, idx++);
      for (auto& x : t) x = 0.05 + 3 * uniform_at(seed, 11, idx++);
      double k = K(s, t);
      double scale = std::sqrt(K(s, s) * K(t, t));
      worst = std::max(worst, std::abs(lamperti_inverse(C, K.hurst(), s, t) - k) / scale);
    }
    rows.push_back(make_row("lamperti_round_trip", std::string(fam) + " 100 pairs max rel", worst, 0, 1e-12));
  }
  {
    HurstVector H{0.3, 0.7};
    StationaryCov C = lamperti_forward(make_kernel(FbsSpec{H}));
    StationaryCov Ct = lamperti_forward(make_kernel(MildThetaSpec{0.3, 0.7, 1.0}));
    double worst = 0, worst_t = 0;
    for (double a : vg)
      for (double b : vg) {
        Point v{a, b};
        worst = std::max(worst, std::abs(C(v) - c_fbs_stationary(H, v)));
        worst_t = std::max(worst_t, std::abs(Ct(v) - c_theta(0.3, 0.7, 1.0, v)));
      }
    rows.push_back(make_row("lamperti_fbs", "H=(0.3,0.7) 21x21 max", worst, 0, 1e-12));
    rows.push_back(make_row("lamperti_mild_theta", "H=(0.3,0.7) theta=1 21x21 max", worst_t, 0, 1e-12));
  }
  {
    HurstVector H{0.3, 0.7};
    StationaryCov C(2, [](PointView v) { return c_theta(0.3, 0.7, 0.5, v); });
    CovKernel K = kernel_from_stationary(C, H, ClaimedClass::MildOnly, "lamperti_inverse(c_theta)");
    auto rep = classify_stationarity(K, ProbePlan::random(2, seed));
    bool mild = rep.verdict == IncrementClass::MildOnly || rep.verdict == IncrementClass::StrictWide;
    rows.push_back(make_row("criterion_vs_classify", std::string("verdict ") + to_string(rep.verdict),
                            mild ? 1 : 0, 1, 0));
  }
  {
    HurstVector H{0.3, 0.7};
    SpectralDensity g = fbm_density(H);
    const double delta = 0.5;
    SpectralDensity odd(2, [&](PointView x) {
      return g_product(H, x) * (1 + delta * std::tanh(x[0]) * std::tanh(x[1]));
    }, {1.6, 2.4});
    SpectralDensity scaled(2, [&](PointView x) { return 1.1 * g_product(H, x); }, {1.6, 2.4});
    for (Point x : {Point{0.3, -0.8}, Point{1.5, 2}, Point{0, 4}}) {
      std::string p = fmtp("x=(%g,%g)", x[0], x[1]);
      double gx = g_product(H, x);
      rows.push_back(make_row("density_even", p, density_criterion_residual(g, H, x), 0, 1e-15));
      rows.push_back(make_row("density_odd_family", p, density_criterion_residual(odd, H, x), 0, 1e-15));
      rows.push_back(make_row("density_scaled", p, density_criterion_residual(scaled, H, x), 0.4 * gx,
                              1e-14 * std::max(1.0, gx)));
    }
  }
  return rows;
}

std::vector<CheckRow> ma_suite(std::uint64_t seed) {
  std::vector<CheckRow> rows;
  const double H1 = 0.3, H2 = 0.7;
  HurstVector H{H1, H2};
  {
    MAKernel g = moving_pair_kernel(H1, H2, 1, 0);
    std::uint64_t idx = 0;
    for (int i = 0; i < 20; ++i) {
      Point s(2), t(2);
      for (auto& x : s) x = 0.1 + 2.9 * uniform_at(seed, 13, idx++);
      for (auto& x : t) x = 0.1 + 2.9 * uniform_at(seed, 13, idx++);
      rows.push_back(make_row("pair_vs_fbs", fmtp("s=(%.4f,%.4f) t=(%.4f,%.4f)", s[0], s[1], t[0], t[1]),
                              cov_from_ma(g, s, t).value, cov_fbs(H, s, t), 1e-3));
    }
  }
  const Point one{1, 1};
  const double b = std::sin(kPi * H1) * std::sin(kPi * H2);
  for (double d0 : {0.0, 0.5, -0.6, 1.0}) {
    double d1 = -d0 * b + std::sqrt(d0 * d0 * b * b - (d0 * d0 - 1));
    auto dd = validate_dd(H1, H2, d0, d1);
    rows.push_back(make_row("dd_residual", fmtp("H=(0.3,0.7) d0=%g d1=%.12f", d0, d1), dd.residual, 0, 1e-12));
    rows.push_back(make_row("unit_variance", fmtp("H=(0.3,0.7) d0=%g d1=%.12f", d0, d1),
                            cov_from_ma(moving_pair_kernel(H1, H2, d0, d1), one, one).value, 1, 1e-3));
  }
  for (auto [d0, d1] : {std::pair{0.0, 1.0}, std::pair{0.6, 0.8}, std::pair{1.0, 0.0}}) {
    rows.push_back(make_row("unit_variance_half", fmtp("H=(0.5,0.5) d0=%g d1=%g", d0, d1),
                            cov_from_ma(moving_pair_kernel(0.5, 0.5, d0, d1), one, one).value, 1, 1e-3));
  }
  {
    double d = 1 / std::sqrt(3.0);
    rows.push_back(make_row("dd_residual", "H=(0.25,0.25) d0=d1=1/sqrt3", validate_dd(0.25, 0.25, d, d).residual,
                            0, 1e-12));
  }
  {
    // K_e from the strict weights gamma_e, with antisymmetric phases.
    StrictWeights w = StrictWeights::from_gamma(2, {0.35, 0.15, 0.15, 0.35});
    double norm = 1;
    for (double h : H.values()) norm *= std::tgamma(1 + 2 * h) * std::sin(kPi * h) / kPi;
    std::vector<double> K(4), phi(4);
    for (unsigned e = 0; e < 4; ++e) K[e] = w[e] * norm;
    phi[0] = 0.4;
    phi[3] = -0.4;
    phi[1] = -1.1;
    phi[2] = 1.1;
    MAKernel g = ma_kernel_general(H, K, phi);
    for (auto [s, t] : {std::pair{Point{1, 1}, Point{1, 1}}, std::pair{Point{1, 2}, Point{2, 0.5}},
                        std::pair{Point{0.3, 1.7}, Point{2.5, 2.5}}}) {
      rows.push_back(make_row("general_kernel_vs_strict",
                              fmtp("s=(%g,%g) t=(%g,%g)", s[0], s[1], t[0], t[1]),
                              cov_from_ma(g, s, t).value, cov_strict_general(H, w, s, t), 1e-3));
    }
  }
  {
    MAKernel g = moving_pair_kernel(H1, H2, 0.5, -0.5 * b + std::sqrt(0.25 * b * b + 0.75));
    Point s{0.7, 1.3}, t{1.9, 0.4};
    double kst = cov_from_ma(g, s, t).value, kts = cov_from_ma(g, t, s).value;
    rows.push_back(make_row("ma_symmetry", "s=(0.7,1.3) t=(1.9,0.4)", kst, kts, 1e-8));
    Point a{1.7, 0.6}, as{a[0] * s[0], a[1] * s[1]}, at{a[0] * t[0], a[1] * t[1]};
    double scale = std::pow(a[0], 2 * H1) * std::pow(a[1], 2 * H2);
    rows.push_back(make_row("ma_self_similarity", "a=(1.7,0.6)", cov_from_ma(g, as, at).value, scale * kst, 1e-2));
    CovKernel K("moving_pair", H, ClaimedClass::Strict,
                [g](PointView x, PointView y) {
                  for (std::size_t k = 0; k < 2; ++k)
                    if (x[k] == 0 || y[k] == 0) return 0.0;
                  return cov_from_ma(g, x, y).value;
                });
    ProbePlan plan = ProbePlan::random(2, seed, 3, 3);
    auto rep = classify_stationarity(K, plan);
    rows.push_back(make_row("ma_increment_variance", "3 pairs x 3 shifts max rel", rep.max_variance_residual, 0, 1e-2));
    rows.push_back(make_row("ma_increment_cross", "3 pairs x 3 shifts max rel", rep.max_cross_residual, 0, 1e-2));
  }
  {
    // x inside [0,t]: every log term is evaluated at |t - x| = |x|.
    std::vector<double> K(4, 1 / (4 * kPi * kPi)), phi(4, 0);
    MAKernel g = ma_kernel_half(2, K, phi);
    Point t{2, 3}, x{1, 1.5};
    Complex v = g(t, x);
    double expect = kPi * kPi * 4 * std::sqrt(K[0]) / (2 * kPi);
    rows.push_back(make_row("half_kernel_interior", "t=(2,3) x=(1,1.5)", v.real(), expect, 1e-12));
  }
  return rows;
}

}  // namespace ssf
