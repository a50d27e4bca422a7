#include "ssfield/moving_average.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ssfield/errors.hpp"
#include "ssfield/quadrature.hpp"

namespace ssf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Factors at x = c + y, with t - x formed as (t - c) - y so that offsets from
// the cut points 0, s, t stay exact under endpoint grading.
double plus_at(double a, double t, double c, double y) {
  double tx = (t - c) - y;
  double x = c + y;
  if (tx <= 0) return 0.0;
  if (x >= 0) return std::pow(tx, a);
  if (-x <= 2 * t) return std::pow(tx, a) - std::pow(-x, a);
  return std::pow(-x, a) * std::expm1(a * std::log1p(t / -x));
}

double minus_at(double a, double t, double c, double y) {
  double tx = (t - c) - y;
  double x = c + y;
  if (x <= 0) return 0.0;
  if (tx >= 0) return -std::pow(x, a);
  if (x <= 2 * t) return std::pow(-tx, a) - std::pow(x, a);
  return std::pow(x, a) * std::expm1(a * std::log1p(-t / x));
}

double log_at(double t, double c, double y) {
  double x = c + y;
  if (std::abs(x) > 2 * std::abs(t)) return std::log1p(-t / x);
  double tx = (t - c) - y;
  return std::log(std::abs(tx)) - std::log(std::abs(x));
}

double indicator_at(double t, double c, double y) {
  double x = c + y;
  double tx = (t - c) - y;
  return (x >= 0 && tx >= 0) ? kPi : 0.0;
}

double factor_at(double H, int which, double t, double c, double y) {
  if (H == 0.5) return which == 0 ? indicator_at(t, c, y) : log_at(t, c, y);
  return which == 0 ? plus_at(H - 0.5, t, c, y) : minus_at(H - 0.5, t, c, y);
}

double factor(double H, int which, double t, double x) { return factor_at(H, which, t, 0.0, x); }

// Support [lo, hi] of x -> factor(which, t, x).
std::pair<double, double> support(double H, int which, double t) {
  if (H == 0.5) return which == 0 ? std::pair{0.0, t} : std::pair{-kInf, kInf};
  return which == 0 ? std::pair{-kInf, t} : std::pair{0.0, kInf};
}

bool all_half(const HurstVector& H) {
  return std::all_of(H.values().begin(), H.values().end(), [](double h) { return h == 0.5; });
}
bool none_half(const HurstVector& H) {
  return std::none_of(H.values().begin(), H.values().end(), [](double h) { return h == 0.5; });
}

}  // namespace

double ma_plus(double H, double t, double x) { return plus_at(H - 0.5, t, 0.0, x); }
double ma_minus(double H, double t, double x) { return minus_at(H - 0.5, t, 0.0, x); }
double ma_indicator(double t, double x) { return indicator_at(t, 0.0, x); }
double ma_log(double t, double x) { return log_at(t, 0.0, x); }

double ma_basis_integral(double H, int a, int b, double t, double s, double tol) {
  auto [la, ha] = support(H, a, t);
  auto [lb, hb] = support(H, b, s);
  double lo = std::max(la, lb), hi = std::min(ha, hb);
  if (!(lo < hi)) return 0.0;
  std::vector<double> cuts;
  if (std::isfinite(lo)) cuts.push_back(lo);
  for (double c : {0.0, s, t})
    if (c > lo && c < hi) cuts.push_back(c);
  if (std::isfinite(hi)) cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double alpha = H - 0.5;
  double sigma;
  double q;
  if (H == 0.5) {
    sigma = kLogSingularity;
    q = 2.0;
  } else {
    sigma = alpha < 0 ? std::min(-2.0 * alpha, 0.9) : 0.5;
    q = 3.0 - 2.0 * H;
  }
  // int_0^len F(c + dir y) dy, graded at y = 0 (and at y = len when finite).
  auto from = [&](double c, double dir) {
    return Integrand<double>([=](double y) {
      double yy = dir * y;
      return factor_at(H, a, t, c, yy) * factor_at(H, b, s, c, yy);
    });
  };

  const std::size_t parts = 2 * cuts.size();
  QuadOptions opt;
  opt.abs_tol = tol / static_cast<double>(parts);
  EvalBudget budget;
  double total = 0;
  auto take = [&](const QuadResult<double>& r) {
    if (!r.converged) throw QuadratureError("moving-average basis integral did not converge");
    total += r.value;
  };
  if (!std::isfinite(lo))
    take(integrate_algebraic_tail(from(cuts.front(), -1.0), 0.0, q, opt, &budget, sigma));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double half = 0.5 * (cuts[i + 1] - cuts[i]);
    take(integrate_finite(from(cuts[i], 1.0), 0.0, half, opt, {sigma, 0}, &budget));
    take(integrate_finite(from(cuts[i + 1], -1.0), 0.0, half, opt, {sigma, 0}, &budget));
  }
  if (!std::isfinite(hi))
    take(integrate_algebraic_tail(from(cuts.back(), 1.0), 0.0, q, opt, &budget, sigma));
  return total;
}

MAKernel::MAKernel(HurstVector H, std::vector<Complex> coefficients)
    : h_(std::move(H)), b_(std::move(coefficients)) {
  if (b_.size() != (std::size_t{1} << h_.size()))
    throw DimensionError("MAKernel needs 2^N coefficients");
  if (all_half(h_)) {
    log_basis_ = true;
  } else if (none_half(h_)) {
    log_basis_ = false;
  } else {
    throw DomainError("moving-average kernels need all H_j = 1/2 or all H_j != 1/2");
  }
}

bool is_singular(Complex v) { return std::isinf(v.real()) || std::isinf(v.imag()); }

Complex MAKernel::operator()(PointView t, PointView x) const {
  const std::size_t N = h_.size();
  if (t.size() != N || x.size() != N) throw DimensionError("MAKernel: dimension mismatch");
  for (std::size_t j = 0; j < N; ++j) {
    bool at_edge = x[j] == 0 || x[j] == t[j];
    if (at_edge && (log_basis_ || h_[j] < 0.5)) return {kInf, kInf};
  }
  Complex g = 0;
  for (unsigned c = 0; c < b_.size(); ++c) {
    if (b_[c] == 0.0) continue;
    double prod = 1;
    for (std::size_t j = 0; j < N; ++j) prod *= factor(h_[j], (c >> j) & 1u, t[j], x[j]);
    g += b_[c] * prod;
  }
  return g;
}

namespace {

void check_phases(std::size_t N, const std::vector<double>& phi) {
  const unsigned m = 1u << N;
  if (phi.size() != m) throw WeightError("need 2^N phases");
  for (unsigned e = 0; e < m; ++e)
    if (phi[e] != -phi[e ^ (m - 1)]) throw WeightError("phases must satisfy phi_{-e} = -phi_e");
}

// B_c = sum_e a_e prod_j w_j(c_j, e_j)
std::vector<Complex> expand(std::size_t N, const std::vector<Complex>& a,
                            const std::vector<std::array<Complex, 2>>& w_plus_e,
                            const std::vector<std::array<Complex, 2>>& w_minus_e) {
  const unsigned m = 1u << N;
  std::vector<Complex> B(m, 0.0);
  for (unsigned c = 0; c < m; ++c)
    for (unsigned e = 0; e < m; ++e) {
      Complex p = a[e];
      for (std::size_t j = 0; j < N; ++j) {
        unsigned cj = (c >> j) & 1u;
        p *= sign_of(e, j) > 0 ? w_plus_e[j][cj] : w_minus_e[j][cj];
      }
      B[c] += p;
    }
  return B;
}

}  // namespace

MAKernel ma_kernel_general(const HurstVector& H, const std::vector<double>& K,
                           const std::vector<double>& phi) {
  const std::size_t N = H.size();
  if (!none_half(H)) throw DomainError("ma_kernel_general needs all H_j != 1/2");
  validate_weights(K, H);
  check_phases(N, phi);
  double scale = 1;
  for (std::size_t j = 0; j < N; ++j) scale *= std::tgamma(0.5 - H[j]) / std::sqrt(2 * kPi);
  std::vector<Complex> a(K.size());
  for (unsigned e = 0; e < K.size(); ++e) a[e] = std::sqrt(K[e]) * std::polar(1.0, phi[e]) * scale;
  std::vector<std::array<Complex, 2>> wp(N), wm(N);
  for (std::size_t j = 0; j < N; ++j) {
    double beta = 0.5 * kPi * (H[j] + 0.5);
    Complex Ap = std::polar(1.0, -beta), Am = std::polar(1.0, beta);
    wp[j] = {Ap, -std::conj(Ap)};
    wm[j] = {Am, -std::conj(Am)};
  }
  return MAKernel(H, expand(N, a, wp, wm));
}

MAKernel ma_kernel_half(std::size_t N, const std::vector<double>& K,
                        const std::vector<double>& phi) {
  HurstVector H(std::vector<double>(N, 0.5));
  validate_weights(K, H);
  check_phases(N, phi);
  double scale = std::pow(2 * kPi, -0.5 * static_cast<double>(N));
  std::vector<Complex> a(K.size());
  for (unsigned e = 0; e < K.size(); ++e) a[e] = std::sqrt(K[e]) * std::polar(1.0, phi[e]) * scale;
  std::vector<std::array<Complex, 2>> wp(N, {Complex(1.0), Complex(0, 1)});
  std::vector<std::array<Complex, 2>> wm(N, {Complex(1.0), Complex(0, -1)});
  return MAKernel(H, expand(N, a, wp, wm));
}

MAKernel moving_pair_kernel(double H1, double H2, double d0, double d1) {
  HurstVector H{H1, H2};
  bool h1 = H1 == 0.5, h2 = H2 == 0.5;
  if (h1 != h2) throw DomainError("MovingPair needs both or neither H_j equal to 1/2");
  double scale = h1 ? 1.0 / (kPi * kPi) : c2(H1) * c2(H2);
  return MAKernel(H, {d0 * scale, 0.0, 0.0, d1 * scale});
}

DdCheck validate_dd(double H1, double H2, double d0, double d1, double tol) {
  require_hurst(H1);
  require_hurst(H2);
  double r;
  if (H1 == 0.5 && H2 == 0.5) {
    r = d0 * d0 + d1 * d1 - 1.0;
  } else {
    r = d0 * d0 + 2 * d0 * d1 * std::sin(kPi * H1) * std::sin(kPi * H2) + d1 * d1 - 1.0;
  }
  return {r, std::abs(r) <= tol};
}

MACov cov_from_ma(const MAKernel& g, PointView s, PointView t, double tol) {
  const HurstVector& H = g.hurst();
  const std::size_t N = H.size();
  require_dims(N, s, t);
  const auto& B = g.coefficients();
  const unsigned m = static_cast<unsigned>(B.size());
  // basis[j][a][b] = int q_a(t_j, x) q_b(s_j, x) dx, filled on demand
  std::vector<std::array<std::array<double, 2>, 2>> basis(N);
  std::vector<std::array<std::array<bool, 2>, 2>> have(N);
  for (auto& h : have) h = {{{false, false}, {false, false}}};
  auto I = [&](std::size_t j, unsigned a, unsigned b) {
    if (!have[j][a][b]) {
      basis[j][a][b] = ma_basis_integral(H[j], static_cast<int>(a), static_cast<int>(b), t[j],
                                         s[j], tol);
      have[j][a][b] = true;
    }
    return basis[j][a][b];
  };
  Complex total = 0;
  for (unsigned c = 0; c < m; ++c) {
    if (B[c] == 0.0) continue;
    for (unsigned d = 0; d < m; ++d) {
      if (B[d] == 0.0) continue;
      double prod = 1;
      for (std::size_t j = 0; j < N && prod != 0; ++j) prod *= I(j, (c >> j) & 1u, (d >> j) & 1u);
      total += B[c] * std::conj(B[d]) * prod;
    }
  }
  return {total.real(), std::abs(total.imag())};
}

}  // namespace ssf
