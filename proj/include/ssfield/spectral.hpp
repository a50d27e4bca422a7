#pragma once

#include <functional>
#include <vector>

#include "ssfield/cov_kernels.hpp"

namespace ssf {

double log_g_fbm(double H, double x);
double g_fbm(double H, double x);
double g_w(double x);

// Product of one-dimensional densities, normalized to unit mass: prod_k g_fbm(H_k, x_k).
double g_product(const HurstVector& H, PointView x);
// Same expression under a single 1/(2 pi) prefactor: (2 pi)^{N-1} g_product.
double g_product_displayed(const HurstVector& H, PointView x);

class SpectralDensity {
 public:
  using Fn = std::function<double(PointView)>;
  using Factor = std::function<double(double)>;

  // decay[k]: exponent q with f ~ |x_k|^{-q} along coordinate k.
  SpectralDensity(std::size_t N, Fn fn, std::vector<double> decay);
  static SpectralDensity separable(std::vector<Factor> factors, std::vector<double> decay);

  double operator()(PointView x) const;
  std::size_t dim() const { return n_; }
  bool is_separable() const { return !factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }
  double decay(std::size_t k) const { return decay_[k]; }

 private:
  std::size_t n_;
  Fn fn_;
  std::vector<Factor> factors_;
  std::vector<double> decay_;
};

SpectralDensity fbm_density(const HurstVector& H);

struct FourierOptions {
  double tol = 1e-8;
  double cut = 20;
  // Use the separable factorization when available.
  bool use_factors = true;
};

struct DensityCov {
  double value;
  double imag;
  double abs_error;
};
// int e^{i<x,v>} f(x) dx over R^N.
DensityCov cov_from_density(const SpectralDensity& f, PointView v, const FourierOptions& opt = {});

// sum_e f(e o x) - 2^N g_product(H, x).
double density_criterion_residual(const SpectralDensity& f, const HurstVector& H, PointView x);

struct FbmSpectral {
  double spectral;
  double closed;
};
FbmSpectral fbm_spectral_cov_check(double H, double s, double t, double tol = 1e-8);

}  // namespace ssf
