#include <doctest.h>

#include <cmath>

#include "frozen_values.hpp"
#include "ssfield/errors.hpp"
#include "ssfield/special_fn.hpp"

using namespace ssf;

TEST_SUITE("special_fn") {

TEST_CASE("abs_gamma at known points") {
  CHECK(abs_gamma({0.5, 0}) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(abs_gamma({0.5, 1.0}) == doctest::Approx(std::sqrt(kPi / std::cosh(kPi))).epsilon(1e-13));
  CHECK(abs_gamma({0.3, 0.7}) == doctest::Approx(frozen::kAbsGamma_03_07).epsilon(1e-13));
}

TEST_CASE("log_abs_gamma against high-precision values") {
  CHECK(log_abs_gamma({0.3, 1}) == doctest::Approx(frozen::kLogAbsGamma_a).epsilon(1e-13));
  CHECK(log_abs_gamma({0.1, 25}) == doctest::Approx(frozen::kLogAbsGamma_b).epsilon(1e-13));
  CHECK(log_abs_gamma({-2.5, 0.5}) == doctest::Approx(frozen::kLogAbsGamma_c).epsilon(1e-12));
  CHECK(log_abs_gamma({7.25, -40}) == doctest::Approx(frozen::kLogAbsGamma_d).epsilon(1e-13));
}

TEST_CASE("scaled log gamma stays finite where |Gamma| underflows") {
  for (double h : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    for (double x : {0.0, 1.0, 19.0, 21.0, 300.0, 1e4}) {
      double v = log_abs_gamma_scaled(h, x);
      REQUIRE(std::isfinite(v));
      if (x < 100) CHECK(v == doctest::Approx(log_abs_gamma({h, x}) + kPi * x / 2).epsilon(1e-12));
    }
  }
}

TEST_CASE("poles and overflow are errors") {
  CHECK_THROWS_AS(abs_gamma({0, 0}), PoleError);
  CHECK_THROWS_AS(abs_gamma({-3, 0}), PoleError);
  CHECK_THROWS_AS(abs_gamma({200, 0}), OverflowError);
  CHECK_NOTHROW(log_abs_gamma({200, 0}));
}

TEST_CASE("reflection on the critical line") {
  for (double x = -20; x <= 20; x += 0.25) {
    double g = abs_gamma({0.5, x});
    CHECK(g * g * std::cosh(kPi * x) == doctest::Approx(kPi).epsilon(1e-10));
  }
}

TEST_CASE("conjugate symmetry and recurrence") {
  for (double a = -2.7; a < 3; a += 0.6) {
    for (double b = -4; b <= 4; b += 1.3) {
      Complex z{a, b};
      CHECK(std::abs(abs_gamma(z) - abs_gamma(std::conj(z))) <= 1e-14 * abs_gamma(z));
      CHECK(abs_gamma(z + 1.0) == doctest::Approx(std::abs(z) * abs_gamma(z)).epsilon(1e-11));
    }
  }
}

TEST_CASE("harmonizable constants") {
  CHECK(c1(0.5) == doctest::Approx(std::sqrt(1 / (2 * kPi))).epsilon(1e-14));
  CHECK(c1(0.25) == doctest::Approx(frozen::kC1_25).epsilon(1e-13));
  CHECK(c1(0.75) == doctest::Approx(frozen::kC1_75).epsilon(1e-13));
  CHECK(c2(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c2(0.25) == doctest::Approx(frozen::kC2_25).epsilon(1e-13));
  CHECK(c2(0.9) == doctest::Approx(frozen::kC2_9).epsilon(1e-13));
  CHECK_THROWS_AS(c1(0.0), DomainError);
  CHECK_THROWS_AS(c2(1.0), DomainError);
  CHECK_THROWS_AS(c2(std::nan("")), DomainError);
}

TEST_CASE("constants are continuous") {
  for (double H = 0.01; H < 0.99; H += 0.0137) {
    CHECK(std::abs(c1(H + 1e-6) - c1(H)) < 1e-4);
    CHECK(std::abs(c2(H + 1e-6) - c2(H)) < 1e-4);
  }
}

TEST_CASE("helpers") {
  CHECK(pow_abs(0, 0.3) == 0);
  CHECK(pow_abs(-8, 1.0 / 3) == doctest::Approx(2));
  CHECK(xlogx(0) == 0);
  CHECK(log_abs_sinh(-2) == doctest::Approx(std::log(std::sinh(2.0))));
  CHECK(std::isfinite(log_abs_sinh(800)));
  for (Complex z : {Complex{0.25, 30}, Complex{-1.3, 0.2}, Complex{0.5, -7}}) {
    double sa = std::sin(kPi * z.real()), sb = std::sinh(kPi * z.imag());
    CHECK(log_abs_sin_pi(z) == doctest::Approx(0.5 * std::log(sa * sa + sb * sb)).epsilon(1e-13));
  }
}

}
