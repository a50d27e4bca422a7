#pragma once

#include <array>
#include <vector>

#include "ssfield/cov_kernels.hpp"
#include "ssfield/special_fn.hpp"

namespace ssf {

// One-dimensional kernel factors, alpha = H - 1/2:
//   p(t,x) = (t-x)_+^alpha - (-x)_+^alpha,   f(t,x) = (x-t)_+^alpha - x_+^alpha.
// For H = 1/2 the factors are pi 1[0,t](x) and log(|t-x| / |x|).
double ma_plus(double H, double t, double x);
double ma_minus(double H, double t, double x);
double ma_indicator(double t, double x);
double ma_log(double t, double x);

// int a(t,x) b(s,x) dx over R for factors a, b in {first, second}:
// (p, f) when H != 1/2, (pi 1[0,t], log ratio) when H = 1/2.
double ma_basis_integral(double H, int a, int b, double t, double s, double tol = 1e-10);

// g(t,x) = sum over c in {0,1}^N of B[c] prod_j q_{c_j}(t_j, x_j), with bit j of c
// selecting the second factor in coordinate j.
class MAKernel {
 public:
  MAKernel(HurstVector H, std::vector<Complex> coefficients);

  const HurstVector& hurst() const { return h_; }
  const std::vector<Complex>& coefficients() const { return b_; }
  bool log_basis() const { return log_basis_; }

  // Infinite magnitude at a singular point.
  Complex operator()(PointView t, PointView x) const;

 private:
  HurstVector h_;
  std::vector<Complex> b_;
  bool log_basis_;
};

bool is_singular(Complex v);

// Kernel from weights K_e (validated against H) and phases phi_e with
// phi_{-e} = -phi_e. All H_j != 1/2.
MAKernel ma_kernel_general(const HurstVector& H, const std::vector<double>& K,
                           const std::vector<double>& phi);
// All H_j = 1/2.
MAKernel ma_kernel_half(std::size_t N, const std::vector<double>& K,
                        const std::vector<double>& phi);

// N = 2 field d0 (plus-part kernel) + d1 (minus-part kernel), scaled by c2 c2;
// for H1 = H2 = 1/2 the pair d0 M([0,t]) + d1/pi^2 (log-log kernel).
MAKernel moving_pair_kernel(double H1, double H2, double d0, double d1);

// Residual d0^2 + 2 d0 d1 sin(pi H1) sin(pi H2) + d1^2 - 1 (d0^2 + d1^2 - 1 at H = 1/2).
struct DdCheck {
  double residual;
  bool pass;
};
DdCheck validate_dd(double H1, double H2, double d0, double d1, double tol = 1e-12);

struct MACov {
  double value;
  double imag_residual;
};
// Re of int g(t,x) conj(g(s,x)) dx, from the one-dimensional basis integrals.
MACov cov_from_ma(const MAKernel& g, PointView s, PointView t, double tol = 1e-10);

}  // namespace ssf
