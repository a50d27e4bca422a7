#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssfield/cov_kernels.hpp"
#include "ssfield/field.hpp"
#include "ssfield/increments.hpp"

namespace ssf {

class Grid {
 public:
  // Points must be distinct with strictly positive coordinates.
  explicit Grid(std::vector<Point> points);
  // Tensor grid with n points per axis, evenly spaced on [lo, hi].
  static Grid regular(std::size_t N, double lo, double hi, std::size_t n);

  std::size_t dim() const { return n_; }
  std::size_t size() const { return pts_.size(); }
  const Point& operator[](std::size_t i) const { return pts_[i]; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::size_t n_ = 0;
  std::vector<Point> pts_;
};

// Dense symmetric matrix, row-major.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Matrix cov_matrix(const CovKernel& K, const Grid& grid);

double min_eigenvalue(const Matrix& M);

struct Factor {
  Matrix L;  // lower triangular
  double jitter = 0;
};
// Rejects matrices with min eigenvalue below -1e-8 trace; retries once with
// diagonal jitter 1e-10 trace / n; throws PsdError naming `spec` otherwise.
Factor cholesky_factor(const Matrix& M, const std::string& spec);

struct SampleBatch {
  std::uint64_t seed = 0;
  std::string spec;
  std::size_t n_samples = 0;
  std::size_t n_points = 0;
  double jitter = 0;
  std::vector<double> values;  // n_samples x n_points, row-major

  double operator()(std::size_t r, std::size_t i) const { return values[r * n_points + i]; }
};

// Replication r uses normals (seed, stream stream_base + r, index 0..n-1).
SampleBatch cholesky_sample(const Matrix& M, std::uint64_t seed, std::size_t n_samples,
                            const std::string& spec, std::uint64_t stream_base = 0);
SampleBatch sample_field(const FieldSpec& spec, const Grid& grid, std::uint64_t seed,
                         std::size_t n_samples);

struct EmpiricalCov {
  Matrix cov;
  Matrix se;
};
// Raw second moments (the fields are centered). SE from var(xy) = K_ii K_jj + K_ij^2,
// with K the analytic matrix when given, the estimate otherwise.
EmpiricalCov empirical_cov(const SampleBatch& batch, const Matrix* analytic = nullptr);

struct McRow {
  std::size_t pair;
  std::size_t shift;  // 0 is h = 0; j > 0 is plan.shifts[j-1]
  ProbeKind kind;
  double estimate;
  double se;
  double reference;  // analytic value at h = 0
  double analytic;   // analytic value at this h
  double z;          // (estimate - reference) / se
};
struct McReport {
  std::vector<McRow> rows;
  double max_abs_z_variance = 0;
  double max_abs_z_cross = 0;
  IncrementClass verdict = IncrementClass::Inconclusive;
};
// Increments are formed from joint samples of the corner values; corners on
// the axes contribute 0. Verdict: |z| <= z_crit on every variance row and not
// every cross row gives MILD_ONLY, and so on.
McReport mc_increment_stationarity(const FieldSpec& spec, const ProbePlan& plan,
                                   std::uint64_t seed, std::size_t n, double z_crit = 4);

struct McCovEstimate {
  double estimate;
  double se;
  double analytic;
  double z;  // (estimate - analytic) / se
};
// Monte Carlo covariance of the increments over two rectangles.
McCovEstimate mc_increment_cov(const FieldSpec& spec, const Rectangle& r1, const Rectangle& r2,
                               std::uint64_t seed, std::size_t n);

struct LimitCell {
  Point s, t;
  double estimate;
  double se;
  double brownian;  // (s1 ^ t1)(s2 ^ t2)
  double exact;     // pre-limit covariance for this r
};
struct LimitReport {
  std::vector<Point> t_grid;
  std::vector<LimitCell> cells;
};
inline constexpr std::size_t kMaxLattice = 512;
LimitReport limit_partial_sums(std::size_t r1, std::size_t r2, const std::vector<Point>& t_grid,
                               std::uint64_t seed, std::size_t n_reps);

namespace serial {
Matrix cov_matrix(const CovKernel& K, const Grid& grid);
SampleBatch cholesky_sample(const Matrix& M, std::uint64_t seed, std::size_t n_samples,
                            const std::string& spec, std::uint64_t stream_base = 0);
EmpiricalCov empirical_cov(const SampleBatch& batch, const Matrix* analytic = nullptr);
LimitReport limit_partial_sums(std::size_t r1, std::size_t r2, const std::vector<Point>& t_grid,
                               std::uint64_t seed, std::size_t n_reps);
}  // namespace serial

}  // namespace ssf
