#include "ssfield/increments.hpp"

#include <algorithm>
#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/rng.hpp"

namespace ssf {

Rectangle::Rectangle(Point s, Point t) : s_(std::move(s)), t_(std::move(t)) {
  if (s_.size() != t_.size() || s_.empty()) throw DimensionError("Rectangle: corner dimensions differ");
  for (std::size_t k = 0; k < s_.size(); ++k)
    if (!(s_[k] >= 0 && s_[k] <= t_[k]))
      throw DomainError("Rectangle: need 0 <= s_k <= t_k in every coordinate");
}

CornerExpansion corner_expansion(const Rectangle& r) {
  const std::size_t N = r.dim();
  CornerExpansion out;
  out.reserve(std::size_t{1} << N);
  for (unsigned i = 0; i < (1u << N); ++i) {
    Corner c{Point(N), 1};
    for (std::size_t k = 0; k < N; ++k) {
      bool flip = (i >> k) & 1u;
      c.point[k] = flip ? r.s()[k] : r.t()[k];
      if (flip) c.sign = -c.sign;
    }
    out.push_back(std::move(c));
  }
  return out;
}

double increment_cov(const CovKernel& K, const Rectangle& r1, const Rectangle& r2) {
  if (r1.dim() != K.dim() || r2.dim() != K.dim())
    throw DimensionError("increment_cov: rectangle and kernel dimensions differ");
  auto c1 = corner_expansion(r1);
  auto c2 = corner_expansion(r2);
  double sum = 0;
  for (const auto& a : c1)
    for (const auto& b : c2) sum += a.sign * b.sign * K(a.point, b.point);
  return sum;
}

double y_half_increment_cov_closed(double theta, PointView h, PointView s, PointView t) {
  if (h.size() != 2 || s.size() != 2 || t.size() != 2)
    throw DimensionError("y_half_increment_cov_closed: N must be 2");
  for (int k = 0; k < 2; ++k) {
    if (!(0 < s[k] && s[k] < t[k])) throw DomainError("y_half_increment_cov_closed: need 0 < s < t");
    if (!(h[k] >= 0)) throw DomainError("y_half_increment_cov_closed: need h >= 0");
  }
  double num = (2 * h[0] + s[0]) * (2 * h[1] + s[1]) * (t[0] - s[0]) * (t[1] - s[1]);
  double den = (h[0] + s[0]) * (h[1] + s[1]) * (h[0] + t[0]) * (h[1] + t[1]);
  return s[0] * s[1] * (1 + theta / 4 * num / den);
}

ProbePlan ProbePlan::random(std::size_t N, std::uint64_t seed, std::size_t n_pairs,
                            std::size_t n_shifts, double u_box, double h_box) {
  ProbePlan p;
  std::uint64_t idx = 0;
  auto u = [&] { return uniform_at(seed, 1, idx++); };
  for (std::size_t i = 0; i < n_pairs; ++i) {
    ProbePair pr{Point(N), Point(N)};
    for (auto& x : pr.u1) x = u_box * (1 - u());
    for (auto& x : pr.u2) x = u_box * (1 - u());
    p.pairs.push_back(std::move(pr));
  }
  for (std::size_t i = 0; i < n_shifts; ++i) {
    Point h(N);
    for (auto& x : h) x = h_box * u();
    p.shifts.push_back(std::move(h));
  }
  return p;
}

const char* to_string(IncrementClass c) {
  switch (c) {
    case IncrementClass::StrictWide: return "STRICT_WIDE";
    case IncrementClass::MildOnly: return "MILD_ONLY";
    case IncrementClass::None: return "NONE";
    case IncrementClass::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::VarianceFirst: return "var_u1";
    case ProbeKind::VarianceSecond: return "var_u2";
    case ProbeKind::Cross: return "cross";
  }
  return "?";
}

namespace {

Rectangle shifted(PointView h, const Point& u) {
  Point lo(h.begin(), h.end()), hi(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) hi[k] = h[k] + u[k];
  return Rectangle(std::move(lo), std::move(hi));
}

struct Probe {
  double v1, v2, c;
};

Probe evaluate(const CovKernel& K, const ProbePair& p, PointView h) {
  Rectangle r1 = shifted(h, p.u1), r2 = shifted(h, p.u2);
  return {increment_cov(K, r1, r1), increment_cov(K, r2, r2), increment_cov(K, r1, r2)};
}

ClassificationReport classify_impl(const CovKernel& K, const ProbePlan& plan,
                                   const ClassifyOptions& opt, bool parallel) {
  const std::size_t N = K.dim();
  const std::size_t P = plan.pairs.size(), S = plan.shifts.size();
  for (const auto& p : plan.pairs)
    if (p.u1.size() != N || p.u2.size() != N) throw DimensionError("probe plan dimension mismatch");
  for (const auto& h : plan.shifts)
    if (h.size() != N) throw DimensionError("probe plan dimension mismatch");

  // Slot 0 of every pair is the h = 0 reference.
  std::vector<Probe> vals(P * (S + 1));
  const Point zero(N, 0.0);
  const long total = static_cast<long>(vals.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long n = 0; n < total; ++n) {
    std::size_t i = static_cast<std::size_t>(n) / (S + 1), j = static_cast<std::size_t>(n) % (S + 1);
    vals[n] = evaluate(K, plan.pairs[i], j == 0 ? PointView(zero) : PointView(plan.shifts[j - 1]));
  }

  ClassificationReport rep{IncrementClass::Inconclusive, 0, 0, opt, {}};
  for (std::size_t i = 0; i < P; ++i) {
    const Probe& ref = vals[i * (S + 1)];
    double sv1 = std::abs(ref.v1), sv2 = std::abs(ref.v2);
    double sc = std::sqrt(sv1 * sv2);
    for (std::size_t j = 1; j <= S; ++j) {
      const Probe& v = vals[i * (S + 1) + j];
      auto push = [&](ProbeKind kind, double val, double r, double scale, double& worst) {
        double res = std::abs(val - r) / scale;
        worst = std::max(worst, res);
        rep.rows.push_back({i, j - 1, kind, val, r, res});
      };
      push(ProbeKind::VarianceFirst, v.v1, ref.v1, sv1, rep.max_variance_residual);
      push(ProbeKind::VarianceSecond, v.v2, ref.v2, sv2, rep.max_variance_residual);
      push(ProbeKind::Cross, v.c, ref.c, sc, rep.max_cross_residual);
    }
  }
  double rv = rep.max_variance_residual, rc = rep.max_cross_residual;
  if (rv >= opt.violation_tol)
    rep.verdict = IncrementClass::None;
  else if (rv <= opt.invariance_tol && rc <= opt.invariance_tol)
    rep.verdict = IncrementClass::StrictWide;
  else if (rv <= opt.invariance_tol && rc >= opt.violation_tol)
    rep.verdict = IncrementClass::MildOnly;
  else
    rep.verdict = IncrementClass::Inconclusive;
  return rep;
}

}  // namespace

ClassificationReport classify_stationarity(const CovKernel& K, const ProbePlan& plan,
                                           const ClassifyOptions& opt) {
  return classify_impl(K, plan, opt, true);
}

namespace serial {
ClassificationReport classify_stationarity(const CovKernel& K, const ProbePlan& plan,
                                           const ClassifyOptions& opt) {
  return classify_impl(K, plan, opt, false);
}
}  // namespace serial

}  // namespace ssf
