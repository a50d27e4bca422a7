#include "ssfield/cov_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "ssfield/errors.hpp"
#include "ssfield/special_fn.hpp"

namespace ssf {
namespace {

// t^{2H} + s^{2H} - |t - s|^{2H}
double a_term(double H, double s, double t) {
  return pow_abs(t, 2 * H) + pow_abs(s, 2 * H) - pow_abs(t - s, 2 * H);
}

// -t^{2H} + s^{2H} + sign(t - s) |t - s|^{2H}, sign(0) = 0
double b_term(double H, double s, double t) {
  double d = t - s;
  double sg = (d > 0) - (d < 0);
  return -pow_abs(t, 2 * H) + pow_abs(s, 2 * H) + sg * pow_abs(d, 2 * H);
}

// t log t - s log s - (t - s) log|t - s|
double l_term(double s, double t) { return xlogx(t) - xlogx(s) - xlogx(t - s); }

// (t^{2H} - s^{2H}) / max(s,t)^{2H}, 0 when both vanish
double ratio_term(double H, double s, double t) {
  double m = std::max(s, t);
  if (m == 0) return 0.0;
  return (pow_abs(t, 2 * H) - pow_abs(s, 2 * H)) / pow_abs(m, 2 * H);
}

void require_nonneg(PointView p) {
  for (double v : p)
    if (!(v >= 0)) throw DomainError("points must lie in R_+^N");
}

void require_2d(PointView s, PointView t) { require_dims(2, s, t); }

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void require_dims(std::size_t N, PointView s, PointView t) {
  if (s.size() != N || t.size() != N)
    throw DimensionError("dimension mismatch: expected " + std::to_string(N) + ", got " +
                         std::to_string(s.size()) + " and " + std::to_string(t.size()));
  require_nonneg(s);
  require_nonneg(t);
}

HurstVector::HurstVector(std::vector<double> values) : h_(std::move(values)) {
  if (h_.empty()) throw DomainError("HurstVector needs N >= 1");
  for (double v : h_) require_hurst(v);
}

StrictWeights StrictWeights::from_gamma(std::size_t N, std::vector<double> gamma) {
  const std::size_t m = std::size_t{1} << N;
  if (gamma.size() != m)
    throw WeightError("expected " + std::to_string(m) + " weights, got " +
                      std::to_string(gamma.size()));
  std::string errs;
  double sum = 0;
  for (unsigned e = 0; e < m; ++e) {
    if (gamma[e] < 0) errs += "negative weight at sign mask " + std::to_string(e) + "; ";
    unsigned anti = e ^ static_cast<unsigned>(m - 1);
    if (e < anti && std::abs(gamma[e] - gamma[anti]) > 1e-10)
      errs += "gamma_e != gamma_{-e} for mask " + std::to_string(e) + "; ";
    sum += gamma[e];
  }
  if (std::abs(sum - 1.0) > 1e-10) errs += "weights sum to " + num(sum) + ", not 1; ";
  if (!errs.empty()) throw WeightError(errs);
  StrictWeights w;
  w.n_ = N;
  w.g_ = std::move(gamma);
  return w;
}

StrictWeights StrictWeights::uniform(std::size_t N) {
  const std::size_t m = std::size_t{1} << N;
  return from_gamma(N, std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

StrictWeights validate_weights(const std::vector<double>& raw_K, const HurstVector& H) {
  const std::size_t N = H.size();
  const std::size_t m = std::size_t{1} << N;
  if (raw_K.size() != m)
    throw WeightError("expected all " + std::to_string(m) + " sign vectors, got " +
                      std::to_string(raw_K.size()));
  double target = 1.0;
  for (std::size_t j = 0; j < N; ++j)
    target *= std::tgamma(1.0 + 2.0 * H[j]) * std::sin(kPi * H[j]) / kPi;
  std::string errs;
  double sum = 0;
  for (unsigned e = 0; e < m; ++e) {
    if (raw_K[e] < 0) errs += "non-negativity: K at sign mask " + std::to_string(e) + " is " +
                              num(raw_K[e]) + "; ";
    unsigned anti = e ^ static_cast<unsigned>(m - 1);
    if (e < anti && std::abs(raw_K[e] - raw_K[anti]) > 1e-10)
      errs += "symmetry: K_e != K_{-e} for mask " + std::to_string(e) + "; ";
    sum += raw_K[e];
  }
  if (std::abs(sum - target) > 1e-10)
    errs += "normalization: sum K_e = " + num(sum) + ", required " + num(target) + "; ";
  if (!errs.empty()) throw WeightError(errs);
  std::vector<double> gamma(m);
  for (unsigned e = 0; e < m; ++e) gamma[e] = raw_K[e] / target;
  return StrictWeights::from_gamma(N, std::move(gamma));
}

const char* to_string(ClaimedClass c) {
  switch (c) {
    case ClaimedClass::Strict: return "STRICT";
    case ClaimedClass::MildOnly: return "MILD_ONLY";
    case ClaimedClass::None: return "NONE";
  }
  return "?";
}

double cov_fbs(const HurstVector& H, PointView s, PointView t) {
  require_dims(H.size(), s, t);
  double r = 1.0;
  for (std::size_t k = 0; k < H.size(); ++k) r *= 0.5 * a_term(H[k], s[k], t[k]);
  return r;
}

std::complex<double> strict_factor(double H, int e, double s, double t) {
  if (H == 0.5) return {std::min(s, t), e * l_term(s, t) / kPi};
  return {0.5 * a_term(H, s, t), 0.5 * e * std::tan(kPi * H) * b_term(H, s, t)};
}

double cov_strict_general(const HurstVector& H, const StrictWeights& w, PointView s,
                          PointView t) {
  const std::size_t N = H.size();
  if (w.dim() != N) throw DimensionError("weights and H dimensions differ");
  require_dims(N, s, t);
  std::complex<double> total = 0;
  double scale = 0;
  for (unsigned e = 0; e < (1u << N); ++e) {
    if (w[e] == 0) continue;
    std::complex<double> p = w[e];
    for (std::size_t j = 0; j < N; ++j) p *= strict_factor(H[j], sign_of(e, j), s[j], t[j]);
    total += p;
    scale += std::abs(p);
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, scale))
    throw WeightError("cov_strict_general: imaginary part " + num(total.imag()) +
                      " does not vanish; weights are not symmetric");
  return total.real();
}

double cov_strict_2d(double H1, double H2, double gamma, PointView s, PointView t) {
  require_hurst(H1);
  require_hurst(H2);
  if (!(gamma >= -1 && gamma <= 1)) throw DomainError("Strict2D gamma must lie in [-1,1]");
  require_2d(s, t);
  const bool h1 = H1 == 0.5, h2 = H2 == 0.5;
  if (h1 && h2)
    return std::min(s[0], t[0]) * std::min(s[1], t[1]) +
           gamma / (kPi * kPi) * l_term(s[0], t[0]) * l_term(s[1], t[1]);
  if (h1 || h2) {
    // coordinate a has H = 1/2, coordinate b does not
    std::size_t a = h1 ? 0 : 1, b = 1 - a;
    double Hb = h1 ? H2 : H1;
    return 0.5 * std::min(s[a], t[a]) * a_term(Hb, s[b], t[b]) +
           gamma * std::tan(kPi * Hb) / (2 * kPi) * l_term(s[a], t[a]) * b_term(Hb, s[b], t[b]);
  }
  return 0.25 * a_term(H1, s[0], t[0]) * a_term(H2, s[1], t[1]) +
         0.25 * gamma * std::tan(kPi * H1) * b_term(H1, s[0], t[0]) * std::tan(kPi * H2) *
             b_term(H2, s[1], t[1]);
}

double cov_mild_theta(double H1, double H2, double theta, PointView s, PointView t) {
  require_hurst(H1);
  require_hurst(H2);
  require_2d(s, t);
  double base = 0.25 * a_term(H1, s[0], t[0]) * a_term(H2, s[1], t[1]);
  return base * (1.0 + 0.25 * theta * ratio_term(H1, s[0], t[0]) * ratio_term(H2, s[1], t[1]));
}

double cov_y_half(double theta, PointView s, PointView t) {
  require_2d(s, t);
  auto rel = [](double a, double b) {
    double m = std::max(a, b);
    return m == 0 ? 0.0 : (b - a) / m;
  };
  return std::min(s[0], t[0]) * std::min(s[1], t[1]) *
         (1.0 + 0.25 * theta * rel(s[0], t[0]) * rel(s[1], t[1]));
}

double cov_z_half(double gamma, PointView s, PointView t) {
  require_2d(s, t);
  return std::min(s[0], t[0]) * std::min(s[1], t[1]) +
         gamma / (kPi * kPi) * l_term(s[0], t[0]) * l_term(s[1], t[1]);
}

double CovKernel::operator()(PointView s, PointView t) const { return fn_(s, t); }

}  // namespace ssf
