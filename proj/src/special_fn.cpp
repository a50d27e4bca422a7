#include "ssfield/special_fn.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <string>

#include "ssfield/errors.hpp"

namespace ssf {
namespace {

// Lanczos coefficients with g = 671/128 (Numerical Recipes, 3rd ed.).
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// B_{2k} / (2k (2k-1))
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,      -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,    -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0};

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

double lanczos_re(Complex z) {
  Complex tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser = 0.999999999999997092;
  for (std::size_t j = 0; j < kLanczos.size(); ++j)
    ser += kLanczos[j] / (z + static_cast<double>(j + 1));
  return (tmp + std::log(2.5066282746310005 * ser / z)).real();
}

// Re of the asymptotic series sum B_{2k} / (2k(2k-1) z^{2k-1}).
double stirling_series_re(Complex z) {
  Complex inv = 1.0 / z;
  Complex inv2 = inv * inv;
  Complex term = inv;
  Complex sum = 0.0;
  for (double c : kStirling) {
    sum += c * term;
    term *= inv2;
  }
  return sum.real();
}

// Re log Gamma(h + ix) + pi x / 2 for x >= 0 and |z| large, via
// -x arg z + pi x / 2 = x atan(h / x).
double stirling_scaled(double h, double x) {
  Complex z(h, x);
  double r = std::abs(z);
  double phase = x > 0 ? x * std::atan(h / x) : 0.0;
  double base = (h - 0.5) * std::log(r) - h + kHalfLog2Pi;
  if (x == 0) return base + stirling_series_re(z);
  return base + phase + stirling_series_re(z);
}

bool is_pole(Complex z) {
  return z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real());
}

}  // namespace

double log_abs_sin_pi(Complex z) {
  double a = z.real();
  double r = a - std::round(a);
  double y = std::abs(z.imag());
  if (y < 1.0) {
    double s = std::sin(kPi * r);
    double sh = std::sinh(kPi * y);
    double m = s * s + sh * sh;
    if (m == 0) throw PoleError("log_abs_sin_pi: zero of sin(pi z)");
    return 0.5 * std::log(m);
  }
  double e = std::exp(-2.0 * kPi * y);
  return kPi * y - std::log(2.0) +
         0.5 * std::log1p(-2.0 * std::cos(2.0 * kPi * r) * e + e * e);
}

double log_abs_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_abs_gamma: non-finite argument");
  if (is_pole(z))
    throw PoleError("log_abs_gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() < 0.5)
    return std::log(kPi) - log_abs_sin_pi(z) - log_abs_gamma(1.0 - z);
  if (std::abs(z) >= 20.0) {
    double x = std::abs(z.imag());
    return stirling_scaled(z.real(), x) - 0.5 * kPi * x;
  }
  return lanczos_re(z);
}

double abs_gamma(Complex z) {
  double lg = log_abs_gamma(z);
  if (lg > std::log(DBL_MAX))
    throw OverflowError("abs_gamma: |Gamma(z)| exceeds the double range");
  return std::exp(lg);
}

double log_abs_gamma_scaled(double h, double x) {
  x = std::abs(x);
  if (h >= 0.5 && std::hypot(h, x) >= 20.0) return stirling_scaled(h, x);
  if (h < 0.5 && x >= 20.0) {
    // reflection: log pi - log|sin(pi z)| - log|Gamma(1 - z)|
    // log|sin(pi z)| - pi x
    double e = std::exp(-2.0 * kPi * x);
    double s = -std::log(2.0) + 0.5 * std::log1p(-2.0 * std::cos(2.0 * kPi * h) * e + e * e);
    return std::log(kPi) - s - stirling_scaled(1.0 - h, x);
  }
  return log_abs_gamma(Complex(h, x)) + 0.5 * kPi * x;
}

void require_hurst(double H) {
  if (!(H > 0.0 && H < 1.0))
    throw DomainError("H must lie in (0,1), got " + std::to_string(H));
}

double c1(double H) {
  require_hurst(H);
  return std::sqrt(H * std::tgamma(2.0 * H) * std::sin(kPi * H) / kPi);
}

double c2(double H) {
  require_hurst(H);
  return std::sqrt(std::tgamma(1.0 + 2.0 * H) * std::sin(kPi * H)) /
         std::tgamma(H + 0.5);
}

double log_abs_sinh(double y) {
  y = std::abs(y);
  if (y == 0) return -HUGE_VAL;
  if (y < 1e-8) return std::log(y) + y * y / 6.0;
  if (y > 20.0) return y - std::log(2.0) + std::log1p(-std::exp(-2.0 * y));
  return std::log(std::sinh(y));
}

double pow_abs(double x, double p) {
  double a = std::abs(x);
  if (a == 0) return p > 0 ? 0.0 : (p == 0 ? 1.0 : HUGE_VAL);
  return std::pow(a, p);
}

double xlogx(double x) { return x == 0 ? 0.0 : x * std::log(std::abs(x)); }

}  // namespace ssf
