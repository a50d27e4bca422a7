#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/field.hpp"
#include "ssfield/simulate.hpp"
#include "ssfield/special_fn.hpp"

using namespace ssf;

namespace {

struct Threads {
  int saved = omp_get_max_threads();
  explicit Threads(int n) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

Matrix identity(std::size_t n) {
  Matrix M(n);
  for (std::size_t i = 0; i < n; ++i) M(i, i) = 1;
  return M;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("grids") {
  auto g = Grid::regular(2, 0.5, 2.5, 5);
  CHECK(g.size() == 25);
  CHECK(g[0] == Point{0.5, 0.5});
  CHECK(g[24] == Point{2.5, 2.5});
  CHECK_THROWS_AS(Grid({{1, 1}, {1, 1}}), DomainError);
  CHECK_THROWS_AS(Grid({{1, 0}}), DomainError);
  CHECK_THROWS_AS(Grid({{1, 1}, {1}}), DimensionError);
}

TEST_CASE("covariance matrices") {
  Grid g({{1, 1}, {2, 2}});
  Matrix a = cov_matrix(make_kernel(FbsSpec{{0.5, 0.5}}), g);
  CHECK(a(0, 0) == doctest::Approx(1));
  CHECK(a(0, 1) == doctest::Approx(1));
  CHECK(a(1, 0) == doctest::Approx(1));
  CHECK(a(1, 1) == doctest::Approx(4));
  Matrix y = cov_matrix(make_kernel(YHalfSpec{1}), g);
  CHECK(y(0, 1) == doctest::Approx(17.0 / 16).epsilon(1e-15));
  CHECK(y(1, 0) == y(0, 1));
  Matrix one = cov_matrix(make_kernel(FbsSpec{{0.3, 0.7}}), Grid({{1.5, 2}}));
  CHECK(one(0, 0) == doctest::Approx(std::pow(1.5, 0.6) * std::pow(2, 1.4)).epsilon(1e-14));
  auto K = make_kernel(default_spec("strict2d"));
  auto big = Grid::regular(2, 0.3, 3, 7);
  CHECK(cov_matrix(K, big).a == serial::cov_matrix(K, big).a);
}

TEST_CASE("identity sampling gives standard normals") {
  const std::size_t n = 10000;
  auto b = cholesky_sample(identity(4), 5, n, "identity");
  CHECK(b.values.size() == 4 * n);
  CHECK(b.jitter == 0);
  auto e = empirical_cov(b);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(e.cov(i, i) - 1) <= 4 / std::sqrt(double(n)));
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(e.cov(i, j)) <= 4 * e.se(i, j));
  }
  auto empty = cholesky_sample(identity(3), 5, 0, "identity");
  CHECK(empty.values.empty());
  CHECK(empty.n_samples == 0);
}

TEST_CASE("tiny batches give finite output") {
  auto b = cholesky_sample(identity(2), 1, 2, "identity");
  auto e = empirical_cov(b);
  for (double v : e.cov.a) CHECK(std::isfinite(v));
  for (double v : e.se.a) CHECK(std::isfinite(v));
  CHECK(e.se(0, 0) == doctest::Approx(e.cov(0, 0)).epsilon(1e-15));
}

TEST_CASE("sampling is bitwise reproducible across runs, thread counts and the serial path") {
  auto spec = default_spec("mild_theta");
  auto grid = Grid::regular(2, 0.5, 2.5, 5);
  SampleBatch one, four;
  {
    Threads t(1);
    one = sample_field(spec, grid, 77, 1500);
  }
  {
    Threads t(4);
    four = sample_field(spec, grid, 77, 1500);
  }
  auto again = sample_field(spec, grid, 77, 1500);
  CHECK(one.values == four.values);
  CHECK(one.values == again.values);
  Matrix M = cov_matrix(make_kernel(spec), grid);
  auto ser = serial::cholesky_sample(M, 77, 1500, "mild_theta");
  CHECK(ser.values == one.values);
  CHECK(sample_field(spec, grid, 78, 1500).values != one.values);

  Matrix A = M;
  EmpiricalCov e1, e4;
  {
    Threads t(1);
    e1 = empirical_cov(one, &A);
  }
  {
    Threads t(4);
    e4 = empirical_cov(one, &A);
  }
  CHECK(e1.cov.a == e4.cov.a);
  CHECK(e1.se.a == e4.se.a);
  CHECK(serial::empirical_cov(one, &A).cov.a == e1.cov.a);
}

TEST_CASE("PSD policy") {
  Matrix bad(2);
  bad(0, 0) = 1;
  bad(1, 1) = 1;
  bad(0, 1) = bad(1, 0) = 2;
  CHECK_THROWS_WITH_AS(cholesky_factor(bad, "broken"), doctest::Contains("broken"), PsdError);
  Matrix singular(2);
  singular.a = {1, 1, 1, 1};
  auto F = cholesky_factor(singular, "rank one");
  CHECK(F.jitter == doctest::Approx(1e-10));
  auto b = cholesky_sample(singular, 3, 10, "rank one");
  CHECK(b.jitter == F.jitter);
  CHECK(min_eigenvalue(singular) == doctest::Approx(0).epsilon(1e-12));
}

TEST_CASE("non-finite kernel values are rejected") {
  CovKernel K("nan", {0.5}, ClaimedClass::None, [](PointView, PointView) { return std::nan(""); });
  CHECK_THROWS_AS(cov_matrix(K, Grid(std::vector<Point>{Point{1}})), DomainError);
}

TEST_CASE("fBs empirical covariance within 4 SE") {
  auto grid = Grid::regular(2, 0.5, 2.5, 4);
  auto K = make_kernel(FbsSpec{{0.3, 0.7}});
  Matrix A = cov_matrix(K, grid);
  auto e = empirical_cov(cholesky_sample(A, 9, 5000, K.name()), &A);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < A.a.size(); ++i) ok += std::abs(e.cov.a[i] - A.a[i]) <= 4 * e.se.a[i];
  CHECK(double(ok) >= 0.95 * double(A.a.size()));
}

TEST_CASE("Monte Carlo increment stationarity") {
  auto plan = ProbePlan::random(2, kProbeSeed, 6, 4);
  auto f = mc_increment_stationarity(default_spec("fbs"), plan, 3, 20000);
  CHECK(f.max_abs_z_variance <= 4);
  CHECK(f.max_abs_z_cross <= 4);
  CHECK(f.verdict == IncrementClass::StrictWide);
  for (const auto& r : f.rows)
    if (r.kind != ProbeKind::Cross) CHECK(std::abs(r.estimate - r.analytic) <= 4 * r.se);

  auto y = mc_increment_stationarity(YHalfSpec{1}, plan, 3, 20000);
  CHECK(y.max_abs_z_variance <= 4);

  ProbePlan designed{{{{1, 1}, {2, 2}}}, {{3, 3}}};
  auto d = mc_increment_stationarity(YHalfSpec{1}, designed, 4, 200000);
  REQUIRE(d.rows.size() == 6);
  const auto& cross = d.rows[5];
  CHECK(cross.kind == ProbeKind::Cross);
  CHECK(cross.analytic ==
        doctest::Approx(y_half_increment_cov_closed(1, Point{3, 3}, Point{1, 1}, Point{2, 2})).epsilon(1e-14));
  CHECK(cross.reference == doctest::Approx(17.0 / 16).epsilon(1e-14));
  CHECK(std::abs(cross.estimate - cross.analytic) <= 4 * cross.se);
  CHECK(std::abs(cross.z) > 4);
  CHECK(d.verdict == IncrementClass::MildOnly);
}

TEST_CASE("Monte Carlo non-independence constants") {
  auto y = mc_increment_cov(YHalfSpec{1}, {{0, 0}, {1, 1}}, {{1, 0}, {2, 2}}, 11, 20000);
  CHECK(y.analytic == doctest::Approx(1.0 / 16).epsilon(1e-12));
  CHECK(std::abs(y.z) <= 4);
  auto z = mc_increment_cov(ZHalfSpec{1}, {{0, 0}, {1, 1}}, {{1, 0}, {2, 2}}, 11, 20000);
  CHECK(z.analytic == doctest::Approx(4 * std::log(2.0) * std::log(2.0) / (kPi * kPi)).epsilon(1e-12));
  CHECK(std::abs(z.z) <= 4);
}

TEST_CASE("lattice partial sums") {
  std::vector<Point> tg{{1, 1}, {1, 2}};
  auto rep = limit_partial_sums(256, 256, tg, 21, 400);
  REQUIRE(rep.cells.size() == 3);
  const auto& v = rep.cells[0];
  CHECK(v.exact == doctest::Approx(257.0 * 257 / (256.0 * 256)).epsilon(1e-15));
  CHECK(v.brownian == 1);
  CHECK(std::abs(v.estimate - v.exact) <= 4 * v.se);
  const auto& c = rep.cells[1];
  CHECK(c.brownian == 1);
  CHECK(std::abs(c.estimate - c.exact) <= 4 * c.se);

  auto a = limit_partial_sums(64, 32, tg, 5, 1), b = limit_partial_sums(64, 32, tg, 5, 1);
  CHECK(a.cells[2].estimate == b.cells[2].estimate);
  auto s = serial::limit_partial_sums(64, 32, tg, 5, 30), p = limit_partial_sums(64, 32, tg, 5, 30);
  for (std::size_t i = 0; i < s.cells.size(); ++i) CHECK(s.cells[i].estimate == p.cells[i].estimate);
  CHECK_THROWS_AS(limit_partial_sums(kMaxLattice + 1, 8, tg, 1, 1), DomainError);
}

}
