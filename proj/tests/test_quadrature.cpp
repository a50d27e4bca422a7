#include <doctest.h>

#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/quadrature.hpp"

using namespace ssf;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("quadrature") {

TEST_CASE("polynomial on a finite interval") {
  auto r = integrate_1d<double>([](double x) { return x; }, {0, 1}, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("endpoint singularities") {
  auto r = integrate_finite<double>([](double x) { return 1 / std::sqrt(x); }, 0, 1, {1e-12},
                                    {0.5, 0});
  CHECK(r.value == doctest::Approx(2).epsilon(1e-11));
  auto l = integrate_finite<double>([](double x) { return std::log(x); }, 0, 1, {1e-12},
                                    {kLogSingularity, 0});
  CHECK(l.value == doctest::Approx(-1).epsilon(1e-11));
}

TEST_CASE("Dirichlet integral") {
  Integrand<double> f = [](double x) { return x == 0 ? 1.0 : std::sin(x) / x; };
  double head = integrate_1d(f, {0, 1}, 1e-12).value;
  double tail = integrate_1d(f, {1, kInf}, 1e-11, {}, {1, 1}).value;
  CHECK(head + tail == doctest::Approx(kPi / 2).epsilon(1e-10));
}

TEST_CASE("cosine power integral") {
  // int_0^inf (cos x - 1) x^{-3/2} dx = Gamma(-1/2) sin(3 pi / 4) = -sqrt(2 pi)
  Integrand<double> f = [](double x) { return (std::cos(x) - 1) / std::pow(x, 1.5); };
  double head = integrate_finite(f, 0, 1, {1e-12}).value;
  auto tail = integrate_power_waves({{0.5, 1}, {0.5, -1}, {-1, 0}}, 1, 1.5, {1e-12});
  CHECK(tail.converged);
  CHECK(std::abs(tail.value.imag()) < 1e-12);
  CHECK(head + tail.value.real() == doctest::Approx(-std::sqrt(2 * kPi)).epsilon(1e-10));
}

TEST_CASE("sine and cosine catalog up to frequency 10") {
  for (double w : {0.5, 1.0, 3.0, 10.0}) {
    // int_0^inf sin(w x) / x dx = pi/2; int_0^inf sin(w x) x^{-1/2} dx = sqrt(pi / (2 w))
    Integrand<double> a = [w](double x) { return x == 0 ? w : std::sin(w * x) / x; };
    double v = integrate_finite(a, 0, 1, {1e-12}).value +
               integrate_oscillatory_tail(a, 1, w, {1e-10}).value;
    CHECK(std::abs(v - kPi / 2) < 1e-8);
    Integrand<double> b = [w](double x) { return std::sin(w * x) / std::sqrt(x); };
    double u = integrate_finite(b, 0, 1, {1e-12}, {0.5, 0}).value +
               integrate_oscillatory_tail(b, 1, w, {1e-10}).value;
    CHECK(std::abs(u - std::sqrt(kPi / (2 * w))) < 1e-8);
    // int_0^inf cos(w x) e^{-x} dx = 1 / (1 + w^2)
    Integrand<double> c = [w](double x) { return std::cos(w * x) * std::exp(-x); };
    CHECK(std::abs(integrate_1d(c, {0, kInf}, 1e-11, {}, {w, 2}).value - 1 / (1 + w * w)) < 1e-8);
  }
}

TEST_CASE("algebraic tail") {
  Integrand<double> f = [](double x) { return 1 / (1 + x * x); };
  CHECK(integrate_1d(f, {0, kInf}, 1e-12, {}, {0, 2}).value == doctest::Approx(kPi / 2).epsilon(1e-11));
  Integrand<double> g = [](double x) { return std::pow(x, -1.2); };
  CHECK(integrate_algebraic_tail(g, 1.0, 1.2, {1e-10}).value == doctest::Approx(5).epsilon(1e-9));
}

TEST_CASE("complex integrand") {
  Integrand<Complex> f = [](double x) { return std::exp(Complex(0, x)); };
  auto r = integrate_finite(f, 0, kPi, {1e-13});
  CHECK(std::abs(r.value - Complex(0, 2)) < 1e-12);
}

TEST_CASE("budget exhaustion is an error") {
  EvalBudget b(10);
  CHECK_THROWS_AS(b.charge(11), QuadratureError);
  Integrand<double> f = [](double x) { return std::sin(1 / x); };
  CHECK_THROWS_AS(integrate_finite(f, 0, 1, {1e-14, 0, 200}), QuadratureError);
}

TEST_CASE("Wynn epsilon accelerates an alternating series") {
  std::vector<double> sums;
  double s = 0;
  for (int k = 0; k < 20; ++k) {
    s += (k % 2 ? -1.0 : 1.0) / (k + 1);
    sums.push_back(s);
  }
  double err = 0;
  CHECK(wynn_epsilon(sums, &err) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}

}
