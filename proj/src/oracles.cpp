#include "ssfield/oracles.hpp"

#include <cmath>
#include <cstdio>

#include "ssfield/errors.hpp"
#include "ssfield/quadrature.hpp"

namespace ssf {
namespace {

// e^{i theta} - 1 without cancellation.
Complex expm1_i(double theta) {
  double s = std::sin(0.5 * theta);
  return Complex(-2.0 * s * s, std::sin(theta));
}

double sgn(double x) { return (x > 0) - (x < 0); }

void require_sign(int eps) {
  if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
}

// Head [0, y0] by graded adaptive quadrature, tail as power waves.
Complex head_plus_tail(const Integrand<Complex>& f, double sigma0, double y0,
                       const std::vector<Wave>& waves, double q, double tol) {
  QuadOptions opt;
  opt.abs_tol = 0.5 * tol;
  EvalBudget budget;
  auto head = integrate_finite<Complex>(f, 0.0, y0, opt, {sigma0, 0}, &budget);
  auto tail = integrate_power_waves(waves, y0, q, opt, &budget);
  if (!head.converged || !tail.converged)
    throw QuadratureError("lemma quadrature did not reach tolerance");
  return head.value + tail.value;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

}  // namespace

double pos_pow(double u, double a) { return u > 0 ? std::pow(u, a) : 0.0; }

LemmaPair lemma1_check(double H, double s, double t, double tol) {
  require_hurst(H);
  if (H == 0.5) throw DomainError("lemma1_check needs H != 1/2");
  const double p = 2.0 * H + 1.0;
  Integrand<Complex> f = [=](double y) {
    return expm1_i(t * y) * expm1_i(-s * y) * std::pow(y, -p);
  };
  std::vector<Wave> waves = {{1.0, t - s}, {-1.0, t}, {-1.0, -s}, {1.0, 0.0}};
  double sigma0 = std::max(0.0, 2.0 * H - 1.0);
  Complex numeric = head_plus_tail(f, sigma0, 1.0, waves, p, tol);
  double pref = kPi / (std::tgamma(1.0 + 2.0 * H) * std::sin(2.0 * kPi * H));
  Complex closed = pref * (std::polar(pow_abs(t, 2 * H), -kPi * H * sgn(t)) +
                           std::polar(pow_abs(s, 2 * H), kPi * H * sgn(s)) -
                           std::polar(pow_abs(t - s, 2 * H), -kPi * H * sgn(t - s)));
  return {numeric, closed};
}

LemmaPair lemma2_check(double s, double t, double tol) {
  Integrand<Complex> f = [=](double y) { return expm1_i(t * y) * expm1_i(-s * y) / (y * y); };
  std::vector<Wave> waves = {{1.0, t - s}, {-1.0, t}, {-1.0, -s}, {1.0, 0.0}};
  Complex numeric = head_plus_tail(f, 0.0, 1.0, waves, 2.0, tol);
  Complex closed(0.5 * kPi * (std::abs(t) + std::abs(s) - std::abs(t - s)),
                 xlogx(t) - xlogx(s) - xlogx(t - s));
  return {numeric, closed};
}

LemmaPair lemma3_check(double H, int eps, double t, double x, double tol) {
  require_hurst(H);
  require_sign(eps);
  if (H == 0.5) throw DomainError("lemma3_check needs H != 1/2");
  if (!(t > 0)) throw DomainError("lemma3_check needs t > 0");
  const double q = H + 0.5;
  const double e = eps;
  const Complex ie(0.0, e);
  Integrand<Complex> f = [=](double y) {
    Complex num = std::polar(1.0, -x * e * y) * expm1_i(t * e * y);
    return num / ie * std::pow(y, -q);
  };
  std::vector<Wave> waves = {{1.0 / ie, (t - x) * e}, {-1.0 / ie, -x * e}};
  double sigma0 = std::max(0.0, H - 0.5);
  Complex numeric = head_plus_tail(f, sigma0, 1.0, waves, q, tol);
  const double a = H - 0.5;
  const double g = std::tgamma(0.5 - H);
  const double beta = 0.5 * kPi * e * (H + 0.5);
  double plus = pos_pow(t - x, a) - pos_pow(-x, a);
  double minus = pos_pow(x - t, a) - pos_pow(x, a);
  Complex closed = plus * g * std::polar(1.0, -beta) - minus * g * std::polar(1.0, beta);
  return {numeric, closed};
}

LemmaPair lemma4_check(int eps, double t, double x, double tol) {
  require_sign(eps);
  if (!(t > 0)) throw DomainError("lemma4_check needs t > 0");
  if (x == 0 || x == t) throw DomainError("lemma4_check needs x not in {0, t}");
  const double e = eps;
  const Complex ie(0.0, e);
  Integrand<Complex> f = [=](double y) {
    Complex num = std::polar(1.0, -x * e * y) * expm1_i(t * e * y);
    return num / (ie * y);
  };
  std::vector<Wave> waves = {{1.0 / ie, (t - x) * e}, {-1.0 / ie, -x * e}};
  Complex numeric = head_plus_tail(f, 0.0, 1.0, waves, 1.0, tol);
  double ind = (x >= 0 && x <= t) ? kPi : 0.0;
  Complex closed(ind, e * (std::log(std::abs(t - x)) - std::log(std::abs(x))));
  return {numeric, closed};
}

Complex lemma4_closed_opposite_sign(int eps, double t, double x) {
  double ind = (x >= 0 && x <= t) ? kPi : 0.0;
  return Complex(ind, -eps * (std::log(std::abs(t - x)) - std::log(std::abs(x))));
}

std::vector<OracleRow> lemma_sweep(double pass_tol) {
  const double hs[] = {0.1, 0.3, 0.7, 0.9};
  const double st[][2] = {{1, 1}, {1, 2}, {2, 1}, {0.5, 3}};
  std::vector<OracleRow> rows;
  auto add = [&](std::string lemma, std::string params, LemmaPair p) {
    double err = p.abs_err();
    rows.push_back({std::move(lemma), std::move(params), p.numeric, p.closed, err,
                    err <= pass_tol});
  };
  for (double H : hs)
    for (auto& p : st)
      add("lemma1", fmt("H=%g s=%g t=%g", H, p[0], p[1]), lemma1_check(H, p[0], p[1]));
  for (auto& p : st) add("lemma2", fmt("s=%g t=%g", p[0], p[1]), lemma2_check(p[0], p[1]));
  for (double H : hs)
    for (double t : {1.0, 3.0})
      for (double x : {-1.0, t / 2, t + 1})
        for (int e : {1, -1})
          add("lemma3", fmt("H=%g eps=%g t=%g x=%g", H, e, t, x), lemma3_check(H, e, t, x));
  for (double t : {1.0, 2.0, 3.0})
    for (double x : {-1.0, t / 2, t + 1})
      for (int e : {1, -1})
        add("lemma4", fmt("eps=%g t=%g x=%g", e, t, x), lemma4_check(e, t, x));
  return rows;
}

}  // namespace ssf
