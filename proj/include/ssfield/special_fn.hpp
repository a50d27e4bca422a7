#pragma once

#include <complex>

namespace ssf {

using Complex = std::complex<double>;

// log|Gamma(z)|. Throws PoleError at 0, -1, -2, ...
double log_abs_gamma(Complex z);

// |Gamma(z)|. Throws OverflowError when the magnitude is not representable.
double abs_gamma(Complex z);

// Re log Gamma(h + i x) + pi |x| / 2, i.e. log(|Gamma(h+ix)| e^{pi|x|/2}).
// Stays O(log|x|) for large |x|, where |Gamma| itself underflows.
double log_abs_gamma_scaled(double h, double x);

double c1(double H);
double c2(double H);

// log|sin(pi z)|, accurate for large |Im z|.
double log_abs_sin_pi(Complex z);

// log|sinh(y)| for y != 0.
double log_abs_sinh(double y);

// |x|^p with 0^p = 0 for p > 0.
double pow_abs(double x, double p);

// x log x with 0 log 0 = 0.
double xlogx(double x);

inline constexpr double kPi = 3.141592653589793238462643383279502884;

void require_hurst(double H);

}  // namespace ssf
