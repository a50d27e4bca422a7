#include "ssfield/spectral.hpp"

#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/quadrature.hpp"
#include "ssfield/special_fn.hpp"

namespace ssf {

// The trigonometric factor sin(pi H) cosh(pi x) / (cosh^2(pi x) - cos^2(pi H))
// and 1/|Gamma(H+ix)|^2 both carry e^{-pi|x|}/e^{+pi|x|}; they cancel in log space.
double log_g_fbm(double H, double x) {
  require_hurst(H);
  double y = kPi * std::abs(x);
  double c = std::cos(kPi * H);
  double e1 = std::exp(-y), e2 = std::exp(-2 * y);
  double lg2h = std::lgamma(2 * H);
  return -std::log(2 * kPi) + std::log(2 * H) - std::log(H * H + x * x) + std::log(kPi) + lg2h -
         2 * log_abs_gamma_scaled(H, x) + std::log(std::sin(kPi * H)) + std::log(2.0) +
         std::log1p(e2) - std::log(1 - 2 * c * e1 + e2) - std::log(1 + 2 * c * e1 + e2);
}

double g_fbm(double H, double x) { return std::exp(log_g_fbm(H, x)); }

double g_w(double x) { return 1 / (2 * kPi * (0.25 + x * x)); }

double g_product(const HurstVector& H, PointView x) {
  if (x.size() != H.size()) throw DimensionError("g_product: dimension mismatch");
  double s = 0;
  for (std::size_t k = 0; k < H.size(); ++k) s += log_g_fbm(H[k], x[k]);
  return std::exp(s);
}

double g_product_displayed(const HurstVector& H, PointView x) {
  return std::pow(2 * kPi, static_cast<double>(H.size()) - 1) * g_product(H, x);
}

SpectralDensity::SpectralDensity(std::size_t N, Fn fn, std::vector<double> decay)
    : n_(N), fn_(std::move(fn)), decay_(std::move(decay)) {
  if (decay_.size() != n_) throw DimensionError("SpectralDensity: one decay exponent per coordinate");
  for (double q : decay_)
    if (!(q > 1)) throw DomainError("SpectralDensity: decay exponent must exceed 1");
}

SpectralDensity SpectralDensity::separable(std::vector<Factor> factors, std::vector<double> decay) {
  auto fs = factors;
  SpectralDensity d(factors.size(),
                    [fs](PointView x) {
                      double r = 1;
                      for (std::size_t k = 0; k < fs.size(); ++k) r *= fs[k](x[k]);
                      return r;
                    },
                    std::move(decay));
  d.factors_ = std::move(factors);
  return d;
}

double SpectralDensity::operator()(PointView x) const {
  if (x.size() != n_) throw DimensionError("spectral density: dimension mismatch");
  return fn_(x);
}

SpectralDensity fbm_density(const HurstVector& H) {
  std::vector<SpectralDensity::Factor> fs;
  std::vector<double> q;
  for (double h : H.values()) {
    fs.push_back([h](double x) { return g_fbm(h, x); });
    q.push_back(1 + 2 * h);
  }
  return SpectralDensity::separable(std::move(fs), std::move(q));
}

namespace {

// int_R e^{ixv} h(x) dx folded onto [0, inf).
QuadResult<Complex> fourier_line(const std::function<Complex(double)>& h, double v, double q,
                                 double cut, const QuadOptions& opt) {
  Integrand<Complex> k = [&](double x) {
    Complex ph = std::polar(1.0, x * v);
    return ph * h(x) + std::conj(ph) * h(-x);
  };
  QuadOptions sub = opt;
  sub.abs_tol = opt.abs_tol / 2;
  auto head = integrate_finite<Complex>(k, 0, cut, sub);
  auto tail = std::abs(v) > 1e-12 ? integrate_oscillatory_tail<Complex>(k, cut, std::abs(v), sub)
                                  : integrate_algebraic_tail<Complex>(k, cut, q, sub);
  if (!head.converged || !tail.converged)
    throw QuadratureError("cov_from_density: tolerance not reached");
  QuadResult<Complex> r;
  r.value = head.value + tail.value;
  r.abs_error = head.abs_error + tail.abs_error;
  r.evaluations = head.evaluations + tail.evaluations;
  r.converged = true;
  return r;
}

Complex nested(const SpectralDensity& f, PointView v, Point& x, std::size_t k,
               const FourierOptions& opt, double* err) {
  const std::size_t N = f.dim();
  QuadOptions qo;
  qo.abs_tol = k == 0 ? opt.tol : opt.tol * 1e-3;
  qo.rel_tol = k == 0 ? 0 : 1e-9;
  std::function<Complex(double)> h = [&](double xk) -> Complex {
    x[k] = xk;
    if (k + 1 == N) return f(x);
    return nested(f, v, x, k + 1, opt, nullptr);
  };
  auto r = fourier_line(h, v[k], f.decay(k), opt.cut, qo);
  if (err) *err = r.abs_error;
  return r.value;
}

}  // namespace

DensityCov cov_from_density(const SpectralDensity& f, PointView v, const FourierOptions& opt) {
  const std::size_t N = f.dim();
  if (v.size() != N) throw DimensionError("cov_from_density: dimension mismatch");
  Complex total;
  double err = 0;
  if (f.is_separable() && opt.use_factors) {
    total = 1;
    QuadOptions qo;
    qo.abs_tol = opt.tol / static_cast<double>(N);
    for (std::size_t k = 0; k < N; ++k) {
      const auto& fk = f.factors()[k];
      auto r = fourier_line([&](double x) -> Complex { return fk(x); }, v[k], f.decay(k), opt.cut, qo);
      total *= r.value;
      err += r.abs_error;
    }
  } else {
    Point x(N);
    total = nested(f, v, x, 0, opt, &err);
  }
  return {total.real(), total.imag(), err};
}

double density_criterion_residual(const SpectralDensity& f, const HurstVector& H, PointView x) {
  const std::size_t N = H.size();
  if (f.dim() != N || x.size() != N) throw DimensionError("density_criterion_residual: dimension mismatch");
  Point w(N);
  double sum = 0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    for (std::size_t j = 0; j < N; ++j) w[j] = sign_of(mask, j) * x[j];
    sum += f(w);
  }
  return sum - std::ldexp(1.0, static_cast<int>(N)) * g_product(H, x);
}

FbmSpectral fbm_spectral_cov_check(double H, double s, double t, double tol) {
  require_hurst(H);
  if (!(s > 0 && t > 0)) throw DomainError("fbm_spectral_cov_check: s and t must be positive");
  HurstVector h{H};
  double v = std::log(t / s);
  FourierOptions opt;
  opt.tol = tol;
  auto c = cov_from_density(fbm_density(h), PointView(&v, 1), opt);
  double spectral = std::pow(t * s, H) * c.value;
  double closed = 0.5 * (std::pow(t, 2 * H) + std::pow(s, 2 * H) - pow_abs(t - s, 2 * H));
  return {spectral, closed};
}

}  // namespace ssf
