#pragma once

#include <cstdint>
#include <vector>

#include "ssfield/cov_kernels.hpp"

namespace ssf {

class Rectangle {
 public:
  // Requires 0 <= s_k <= t_k.
  Rectangle(Point s, Point t);
  const Point& s() const { return s_; }
  const Point& t() const { return t_; }
  std::size_t dim() const { return s_.size(); }

 private:
  Point s_, t_;
};

struct Corner {
  Point point;
  int sign;
};
using CornerExpansion = std::vector<Corner>;

// corner(i)_k = t_k - i_k (t_k - s_k), sign (-1)^{|i|}; bit k of i is i_k.
CornerExpansion corner_expansion(const Rectangle& r);

double increment_cov(const CovKernel& K, const Rectangle& r1, const Rectangle& r2);

// Covariance of the increments of Y_{1/2} over [h, h+s] and [h, h+t] for 0 < s < t.
double y_half_increment_cov_closed(double theta, PointView h, PointView s, PointView t);

inline constexpr std::uint64_t kProbeSeed = 0x9e0be5ULL;

struct ProbePair {
  Point u1, u2;
};
// Increments over [h, h+u1] and [h, h+u2] are compared with those at h = 0.
struct ProbePlan {
  std::vector<ProbePair> pairs;
  std::vector<Point> shifts;

  static ProbePlan random(std::size_t N, std::uint64_t seed = kProbeSeed, std::size_t n_pairs = 20,
                          std::size_t n_shifts = 10, double u_box = 2, double h_box = 3);
};

enum class IncrementClass { StrictWide, MildOnly, None, Inconclusive };
const char* to_string(IncrementClass c);

enum class ProbeKind { VarianceFirst, VarianceSecond, Cross };
const char* to_string(ProbeKind k);

struct ProbeRow {
  std::size_t pair;
  std::size_t shift;
  ProbeKind kind;
  double value;      // at shift h
  double reference;  // at h = 0
  double residual;   // |value - reference| / scale
};

struct ClassifyOptions {
  double invariance_tol = 1e-8;
  double violation_tol = 1e-4;
};

struct ClassificationReport {
  IncrementClass verdict;
  double max_variance_residual;
  double max_cross_residual;
  ClassifyOptions options;
  std::vector<ProbeRow> rows;
};

ClassificationReport classify_stationarity(const CovKernel& K, const ProbePlan& plan,
                                           const ClassifyOptions& opt = {});

namespace serial {
ClassificationReport classify_stationarity(const CovKernel& K, const ProbePlan& plan,
                                           const ClassifyOptions& opt = {});
}

}  // namespace ssf
