#include "ssfield/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "ssfield/errors.hpp"
#include "ssfield/rng.hpp"

namespace ssf {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Grid::Grid(std::vector<Point> points) : pts_(std::move(points)) {
  if (pts_.empty()) throw DomainError("Grid: no points");
  n_ = pts_[0].size();
  if (n_ == 0) throw DimensionError("Grid: points need N >= 1");
  for (const auto& p : pts_) {
    if (p.size() != n_) throw DimensionError("Grid: points of different dimension");
    for (double c : p)
      if (!(c > 0) || !std::isfinite(c))
        throw DomainError("Grid: coordinates must be finite and strictly positive");
  }
  std::vector<Point> sorted = pts_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("Grid: duplicate points");
}

Grid Grid::regular(std::size_t N, double lo, double hi, std::size_t n) {
  if (n == 0 || N == 0) throw DomainError("Grid::regular: empty grid");
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i)
    axis[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  std::size_t total = 1;
  for (std::size_t k = 0; k < N; ++k) total *= n;
  std::vector<Point> pts;
  pts.reserve(total);
  for (std::size_t m = 0; m < total; ++m) {
    Point p(N);
    std::size_t r = m;
    for (std::size_t k = N; k-- > 0;) {
      p[k] = axis[r % n];
      r /= n;
    }
    pts.push_back(std::move(p));
  }
  return Grid(std::move(pts));
}

namespace {

Matrix cov_matrix_impl(const CovKernel& K, const Grid& g, bool parallel) {
  if (g.dim() != K.dim()) throw DimensionError("cov_matrix: grid and kernel dimensions differ");
  const long n = static_cast<long>(g.size());
  Matrix M(g.size());
  bool bad = false;
#pragma omp parallel for schedule(dynamic) if (parallel) reduction(|| : bad)
  for (long i = 0; i < n; ++i) {
    for (long j = i; j < n; ++j) {
      double v = 0.5 * (K(g[i], g[j]) + K(g[j], g[i]));
      if (!std::isfinite(v)) bad = true;
      M(i, j) = v;
      M(j, i) = v;
    }
  }
  if (bad) throw DomainError("cov_matrix: kernel '" + K.name() + "' returned a non-finite value");
  return M;
}

SampleBatch sample_impl(const Matrix& M, std::uint64_t seed, std::size_t n_samples,
                        const std::string& spec, std::uint64_t stream_base, bool parallel) {
  Factor F = cholesky_factor(M, spec);
  const std::size_t n = M.n;
  SampleBatch b;
  b.seed = seed;
  b.spec = spec;
  b.n_samples = n_samples;
  b.n_points = n;
  b.jitter = F.jitter;
  b.values.assign(n_samples * n, 0.0);
  const long reps = static_cast<long>(n_samples);
#pragma omp parallel if (parallel)
  {
    std::vector<double> z(n);
#pragma omp for schedule(static)
    for (long r = 0; r < reps; ++r) {
      fill_normals(seed, stream_base + static_cast<std::uint64_t>(r), 0, z.data(), n);
      double* out = b.values.data() + static_cast<std::size_t>(r) * n;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        const double* Li = F.L.a.data() + i * n;
        for (std::size_t k = 0; k <= i; ++k) acc += Li[k] * z[k];
        out[i] = acc;
      }
    }
  }
  return b;
}

EmpiricalCov empirical_impl(const SampleBatch& b, const Matrix* K, bool parallel) {
  if (b.n_samples < 2) throw DomainError("empirical_cov: need at least 2 samples");
  const std::size_t n = b.n_points;
  if (K && K->n != n) throw DimensionError("empirical_cov: analytic matrix has wrong size");
  EmpiricalCov e{Matrix(n), Matrix(n)};
  const long np = static_cast<long>(n);
  const double inv = 1.0 / static_cast<double>(b.n_samples);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < np; ++i) {
    for (long j = i; j < np; ++j) {
      double acc = 0;
      for (std::size_t r = 0; r < b.n_samples; ++r) acc += b(r, i) * b(r, j);
      e.cov(i, j) = e.cov(j, i) = acc * inv;
    }
  }
  const Matrix& ref = K ? *K : e.cov;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      e.se(i, j) = std::sqrt((ref(i, i) * ref(j, j) + ref(i, j) * ref(i, j)) * inv);
  return e;
}

std::vector<std::size_t> axis_thresholds(const std::vector<double>& axis, std::size_t r) {
  std::vector<std::size_t> k;
  for (double c : axis) k.push_back(static_cast<std::size_t>(std::floor(c * static_cast<double>(r))));
  return k;
}

LimitReport limit_impl(std::size_t r1, std::size_t r2, const std::vector<Point>& t_grid,
                       std::uint64_t seed, std::size_t n_reps, bool parallel) {
  if (r1 == 0 || r2 == 0 || r1 > kMaxLattice || r2 > kMaxLattice)
    throw DomainError("limit_partial_sums: r1 and r2 must lie in [1, 512]");
  if (n_reps == 0) throw DomainError("limit_partial_sums: n_reps must be positive");
  if (t_grid.empty()) throw DomainError("limit_partial_sums: empty t grid");
  std::vector<double> ax[2];
  for (const auto& t : t_grid) {
    if (t.size() != 2) throw DimensionError("limit_partial_sums: t points must be 2-D");
    for (int k = 0; k < 2; ++k) {
      if (!(t[k] > 0) || !std::isfinite(t[k]))
        throw DomainError("limit_partial_sums: t coordinates must be positive");
      ax[k].push_back(t[k]);
    }
  }
  for (auto& a : ax) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  const std::size_t r[2] = {r1, r2};
  std::vector<std::size_t> thr[2] = {axis_thresholds(ax[0], r1), axis_thresholds(ax[1], r2)};
  const std::size_t K1 = thr[0].back(), K2 = thr[1].back();
  const std::size_t cells = (K1 + 1) * (K2 + 1);
  if (cells > 16 * kMaxLattice * kMaxLattice)
    throw DomainError("limit_partial_sums: lattice too large (t * r exceeds the memory guard)");
  // bin[k] = first axis index c with k <= thr[c]
  std::vector<std::size_t> bin[2];
  for (int a = 0; a < 2; ++a) {
    bin[a].resize(thr[a].back() + 1);
    std::size_t c = 0;
    for (std::size_t k = 0; k < bin[a].size(); ++k) {
      while (k > thr[a][c]) ++c;
      bin[a][k] = c;
    }
  }
  const std::size_t A = ax[0].size(), B = ax[1].size();
  std::vector<std::array<std::size_t, 2>> where;
  for (const auto& t : t_grid)
    where.push_back({static_cast<std::size_t>(std::lower_bound(ax[0].begin(), ax[0].end(), t[0]) - ax[0].begin()),
                     static_cast<std::size_t>(std::lower_bound(ax[1].begin(), ax[1].end(), t[1]) - ax[1].begin())});
  const std::size_t P = t_grid.size();
  const std::size_t stride = (K2 + 1) % 2 == 0 ? K2 + 1 : K2 + 2;
  const double norm = 1.0 / std::sqrt(static_cast<double>(r1) * static_cast<double>(r2));
  std::vector<double> V(n_reps * P);
  const long reps = static_cast<long>(n_reps);
#pragma omp parallel if (parallel)
  {
    std::vector<double> row(K2 + 1), S(A * B);
#pragma omp for schedule(static)
    for (long rep = 0; rep < reps; ++rep) {
      std::fill(S.begin(), S.end(), 0.0);
      for (std::size_t k1 = 0; k1 <= K1; ++k1) {
        fill_normals(seed, static_cast<std::uint64_t>(rep), k1 * stride, row.data(), K2 + 1);
        double* Srow = S.data() + bin[0][k1] * B;
        for (std::size_t k2 = 0; k2 <= K2; ++k2) Srow[bin[1][k2]] += row[k2];
      }
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t b = 0; b < B; ++b) {
          double v = S[a * B + b];
          if (a > 0) v += S[(a - 1) * B + b];
          if (b > 0) v += S[a * B + b - 1];
          if (a > 0 && b > 0) v -= S[(a - 1) * B + b - 1];
          S[a * B + b] = v;
        }
      for (std::size_t p = 0; p < P; ++p)
        V[static_cast<std::size_t>(rep) * P + p] = norm * S[where[p][0] * B + where[p][1]];
    }
  }
  auto exact = [&](const Point& s, const Point& t) {
    double e = 1;
    for (int k = 0; k < 2; ++k)
      e *= (std::floor(std::min(s[k], t[k]) * static_cast<double>(r[k])) + 1) / static_cast<double>(r[k]);
    return e;
  };
  LimitReport rep{t_grid, {}};
  for (std::size_t i = 0; i < P; ++i)
    for (std::size_t j = i; j < P; ++j) {
      double acc = 0;
      for (std::size_t n = 0; n < n_reps; ++n) acc += V[n * P + i] * V[n * P + j];
      const Point &s = t_grid[i], &t = t_grid[j];
      double kss = exact(s, s), ktt = exact(t, t), kst = exact(s, t);
      LimitCell c{s, t, acc / static_cast<double>(n_reps),
                  std::sqrt((kss * ktt + kst * kst) / static_cast<double>(n_reps)),
                  std::min(s[0], t[0]) * std::min(s[1], t[1]), kst};
      rep.cells.push_back(std::move(c));
    }
  return rep;
}

}  // namespace

Matrix cov_matrix(const CovKernel& K, const Grid& grid) { return cov_matrix_impl(K, grid, true); }

double min_eigenvalue(const Matrix& M) {
  Eigen::Map<const RowMat> A(M.a.data(), static_cast<long>(M.n), static_cast<long>(M.n));
  Eigen::SelfAdjointEigenSolver<RowMat> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw PsdError("eigenvalue computation failed");
  return es.eigenvalues()(0);
}

Factor cholesky_factor(const Matrix& M, const std::string& spec) {
  const long n = static_cast<long>(M.n);
  if (n == 0) return {};
  Eigen::Map<const RowMat> A(M.a.data(), n, n);
  double trace = A.trace();
  double lmin = min_eigenvalue(M);
  if (lmin < -1e-8 * trace)
    throw PsdError("covariance of '" + spec + "' is not positive semidefinite: min eigenvalue " +
                   std::to_string(lmin) + ", trace " + std::to_string(trace));
  Factor F;
  RowMat W = A;
  Eigen::LLT<RowMat> llt(W);
  if (llt.info() != Eigen::Success) {
    F.jitter = 1e-10 * trace / static_cast<double>(n);
    W.diagonal().array() += F.jitter;
    llt.compute(W);
    if (llt.info() != Eigen::Success)
      throw PsdError("Cholesky factorization of the covariance of '" + spec +
                     "' failed after diagonal jitter " + std::to_string(F.jitter));
  }
  F.L = Matrix(M.n);
  RowMat L = llt.matrixL();
  std::copy(L.data(), L.data() + n * n, F.L.a.begin());
  return F;
}

SampleBatch cholesky_sample(const Matrix& M, std::uint64_t seed, std::size_t n_samples,
                            const std::string& spec, std::uint64_t stream_base) {
  return sample_impl(M, seed, n_samples, spec, stream_base, true);
}

SampleBatch sample_field(const FieldSpec& spec, const Grid& grid, std::uint64_t seed,
                         std::size_t n_samples) {
  CovKernel K = make_kernel(spec);
  return cholesky_sample(cov_matrix(K, grid), seed, n_samples, K.name());
}

EmpiricalCov empirical_cov(const SampleBatch& batch, const Matrix* analytic) {
  return empirical_impl(batch, analytic, true);
}

LimitReport limit_partial_sums(std::size_t r1, std::size_t r2, const std::vector<Point>& t_grid,
                               std::uint64_t seed, std::size_t n_reps) {
  return limit_impl(r1, r2, t_grid, seed, n_reps, true);
}

namespace {

// Joint samples of the increments over `rects`, n x rects.size() row-major.
// Corners on the axes contribute 0.
std::vector<double> increment_samples(const CovKernel& K, const std::vector<Rectangle>& rects,
                                      std::uint64_t seed, std::size_t n, std::uint64_t stream_base) {
  std::map<Point, std::size_t> index;
  std::vector<Point> pts;
  struct Term {
    std::size_t idx;
    int sign;
  };
  std::vector<std::vector<Term>> terms;
  for (const auto& r : rects) {
    if (r.dim() != K.dim()) throw DimensionError("rectangle dimension does not match the field");
    std::vector<Term> out;
    for (auto& c : corner_expansion(r)) {
      bool on_axis = std::any_of(c.point.begin(), c.point.end(), [](double x) { return x == 0; });
      if (on_axis) continue;
      auto [it, fresh] = index.emplace(c.point, pts.size());
      if (fresh) pts.push_back(c.point);
      out.push_back({it->second, c.sign});
    }
    terms.push_back(std::move(out));
  }
  const std::size_t R = rects.size();
  std::vector<double> out(n * R, 0.0);
  if (pts.empty()) return out;
  SampleBatch b = cholesky_sample(cov_matrix(K, Grid(pts)), seed, n, K.name(), stream_base);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t q = 0; q < R; ++q) {
      double v = 0;
      for (const auto& t : terms[q]) v += t.sign * b(r, t.idx);
      out[r * R + q] = v;
    }
  return out;
}

}  // namespace

McReport mc_increment_stationarity(const FieldSpec& spec, const ProbePlan& plan,
                                   std::uint64_t seed, std::size_t n, double z_crit) {
  if (n < 2) throw DomainError("mc_increment_stationarity: need at least 2 samples");
  CovKernel K = make_kernel(spec);
  const std::size_t N = K.dim();
  const std::size_t S = plan.shifts.size();
  McReport rep;
  for (std::size_t i = 0; i < plan.pairs.size(); ++i) {
    const ProbePair& pr = plan.pairs[i];
    if (pr.u1.size() != N || pr.u2.size() != N) throw DimensionError("probe plan dimension mismatch");
    // Rectangles [h, h+u1], [h, h+u2] for h = 0 and every shift, interleaved.
    std::vector<Rectangle> rects;
    for (std::size_t j = 0; j <= S; ++j) {
      Point h = j == 0 ? Point(N, 0.0) : plan.shifts[j - 1];
      if (h.size() != N) throw DimensionError("probe plan dimension mismatch");
      Point a(N), b(N);
      for (std::size_t k = 0; k < N; ++k) {
        a[k] = h[k] + pr.u1[k];
        b[k] = h[k] + pr.u2[k];
      }
      rects.emplace_back(h, a);
      rects.emplace_back(h, b);
    }
    const std::size_t R = rects.size();
    std::vector<double> d = increment_samples(K, rects, seed, n, static_cast<std::uint64_t>(i) << 32);
    const double dn = static_cast<double>(n);
    double ref[3] = {};
    for (std::size_t j = 0; j <= S; ++j) {
      const Rectangle &q1 = rects[2 * j], &q2 = rects[2 * j + 1];
      double m11 = 0, m22 = 0, m12 = 0;
      for (std::size_t r = 0; r < n; ++r) {
        double d1 = d[r * R + 2 * j], d2 = d[r * R + 2 * j + 1];
        m11 += d1 * d1;
        m22 += d2 * d2;
        m12 += d1 * d2;
      }
      double v1 = increment_cov(K, q1, q1), v2 = increment_cov(K, q2, q2);
      double c = increment_cov(K, q1, q2);
      if (j == 0) {
        ref[0] = v1;
        ref[1] = v2;
        ref[2] = c;
      }
      const double est[3] = {m11 / dn, m22 / dn, m12 / dn};
      const double ana[3] = {v1, v2, c};
      const double se[3] = {std::sqrt(2 * v1 * v1 / dn), std::sqrt(2 * v2 * v2 / dn),
                            std::sqrt((v1 * v2 + c * c) / dn)};
      const ProbeKind kinds[3] = {ProbeKind::VarianceFirst, ProbeKind::VarianceSecond, ProbeKind::Cross};
      for (int q = 0; q < 3; ++q) {
        double z = se[q] > 0 ? (est[q] - ref[q]) / se[q] : 0.0;
        rep.rows.push_back({i, j, kinds[q], est[q], se[q], ref[q], ana[q], z});
        if (j == 0) continue;
        double& worst = q < 2 ? rep.max_abs_z_variance : rep.max_abs_z_cross;
        worst = std::max(worst, std::abs(z));
      }
    }
  }
  bool var_ok = rep.max_abs_z_variance <= z_crit, cross_ok = rep.max_abs_z_cross <= z_crit;
  rep.verdict = !var_ok ? IncrementClass::None
                        : (cross_ok ? IncrementClass::StrictWide : IncrementClass::MildOnly);
  return rep;
}

McCovEstimate mc_increment_cov(const FieldSpec& spec, const Rectangle& r1, const Rectangle& r2,
                               std::uint64_t seed, std::size_t n) {
  if (n < 2) throw DomainError("mc_increment_cov: need at least 2 samples");
  CovKernel K = make_kernel(spec);
  std::vector<double> d = increment_samples(K, {r1, r2}, seed, n, 0);
  double m = 0;
  for (std::size_t r = 0; r < n; ++r) m += d[2 * r] * d[2 * r + 1];
  const double dn = static_cast<double>(n);
  double v1 = increment_cov(K, r1, r1), v2 = increment_cov(K, r2, r2), c = increment_cov(K, r1, r2);
  McCovEstimate e{m / dn, std::sqrt((v1 * v2 + c * c) / dn), c, 0};
  e.z = e.se > 0 ? (e.estimate - c) / e.se : 0.0;
  return e;
}

namespace serial {
Matrix cov_matrix(const CovKernel& K, const Grid& grid) { return cov_matrix_impl(K, grid, false); }
SampleBatch cholesky_sample(const Matrix& M, std::uint64_t seed, std::size_t n_samples,
                            const std::string& spec, std::uint64_t stream_base) {
  return sample_impl(M, seed, n_samples, spec, stream_base, false);
}
EmpiricalCov empirical_cov(const SampleBatch& batch, const Matrix* analytic) {
  return empirical_impl(batch, analytic, false);
}
LimitReport limit_partial_sums(std::size_t r1, std::size_t r2, const std::vector<Point>& t_grid,
                               std::uint64_t seed, std::size_t n_reps) {
  return limit_impl(r1, r2, t_grid, seed, n_reps, false);
}
}  // namespace serial

}  // namespace ssf
