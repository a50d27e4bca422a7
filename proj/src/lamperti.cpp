#include "ssfield/lamperti.hpp"

#include <algorithm>
#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/rng.hpp"
#include "ssfield/special_fn.hpp"

namespace ssf {

double StationaryCov::operator()(PointView v) const {
  if (v.size() != n_) throw DimensionError("stationary covariance: dimension mismatch");
  return fn_(v);
}

SelfSimilarityReport check_self_similarity(const CovKernel& K, int triples, double tol,
                                           std::uint64_t seed) {
  const std::size_t N = K.dim();
  const HurstVector& H = K.hurst();
  std::uint64_t idx = 0;
  auto u = [&] { return uniform_at(seed, 0, idx++); };
  double worst = 0;
  Point a(N), s(N), t(N), as(N), at(N);
  for (int r = 0; r < triples; ++r) {
    double scale = 1;
    for (std::size_t k = 0; k < N; ++k) {
      a[k] = 0.25 + 1.75 * u();
      s[k] = 0.1 + 2.9 * u();
      t[k] = 0.1 + 2.9 * u();
      as[k] = a[k] * s[k];
      at[k] = a[k] * t[k];
      scale *= std::pow(a[k], 2 * H[k]);
    }
    double lhs = K(as, at);
    double rhs = scale * K(s, t);
    double norm = std::sqrt(K(as, as) * K(at, at));
    worst = std::max(worst, std::abs(lhs - rhs) / norm);
  }
  return {worst, worst <= tol};
}

StationaryCov lamperti_forward(const CovKernel& K) {
  auto rep = check_self_similarity(K);
  if (!rep.pass)
    throw DomainError("lamperti_forward: kernel '" + K.name() +
                      "' fails the self-similarity precheck (residual " +
                      std::to_string(rep.max_residual) + ")");
  const std::size_t N = K.dim();
  return StationaryCov(N, [K, N](PointView v) {
    Point s(N), t(N);
    for (std::size_t k = 0; k < N; ++k) {
      s[k] = std::exp(-v[k] / 2);
      t[k] = std::exp(v[k] / 2);
    }
    return K(s, t);
  });
}

double lamperti_inverse(const StationaryCov& C, const HurstVector& H, PointView s, PointView t) {
  require_dims(H.size(), s, t);
  double pre = 1;
  Point v(H.size());
  for (std::size_t k = 0; k < H.size(); ++k) {
    if (s[k] == 0 || t[k] == 0) return 0;
    pre *= std::pow(t[k] * s[k], H[k]);
    v[k] = std::log(t[k] / s[k]);
  }
  return pre * C(v);
}

CovKernel kernel_from_stationary(StationaryCov C, HurstVector H, ClaimedClass claimed,
                                 std::string name) {
  HurstVector h = H;
  return CovKernel(std::move(name), std::move(H), claimed,
                   [C = std::move(C), h](PointView s, PointView t) {
                     return lamperti_inverse(C, h, s, t);
                   });
}

// cosh(Hy) - 2^{2H-1} sinh(y/2)^{2H}
//   = (1/2) e^{Hy} [e^{-2Hy} - expm1(2H log1p(-e^{-y}))],  y = |v|.
double c_fbs_factor(double H, double v) {
  require_hurst(H);
  double y = std::abs(v);
  if (y == 0) return 1;
  double m = std::expm1(2 * H * std::log1p(-std::exp(-y)));
  return 0.5 * std::exp(H * y) * (std::exp(-2 * H * y) - m);
}

double c_fbs_stationary(const HurstVector& H, PointView v) {
  if (v.size() != H.size()) throw DimensionError("c_fbs_stationary: dimension mismatch");
  double r = 1;
  for (std::size_t k = 0; k < H.size(); ++k) r *= c_fbs_factor(H[k], v[k]);
  return r;
}

namespace {
// e^{-H|v|} sinh(H v)
double damped_sinh(double H, double v) {
  double s = v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0);
  return -s * std::expm1(-2 * H * std::abs(v)) / 2;
}
}  // namespace

double c_theta(double H1, double H2, double theta, PointView v) {
  if (v.size() != 2) throw DimensionError("c_theta: N must be 2");
  HurstVector H{H1, H2};
  return c_fbs_stationary(H, v) * (1 + theta * damped_sinh(H1, v[0]) * damped_sinh(H2, v[1]));
}

double mild_criterion_residual(const StationaryCov& C, const HurstVector& H, PointView v) {
  const std::size_t N = H.size();
  if (C.dim() != N || v.size() != N) throw DimensionError("mild_criterion_residual: dimension mismatch");
  Point w(N);
  double sum = 0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    for (std::size_t j = 0; j < N; ++j) w[j] = sign_of(mask, j) * v[j];
    sum += C(w);
  }
  return sum - std::ldexp(1.0, static_cast<int>(N)) * c_fbs_stationary(H, v);
}

}  // namespace ssf
