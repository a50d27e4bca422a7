#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ssf {

using Point = std::vector<double>;
using PointView = std::span<const double>;

class HurstVector {
 public:
  HurstVector() = default;
  explicit HurstVector(std::vector<double> values);
  HurstVector(std::initializer_list<double> values) : HurstVector(std::vector<double>(values)) {}

  std::size_t size() const { return h_.size(); }
  double operator[](std::size_t k) const { return h_[k]; }
  const std::vector<double>& values() const { return h_; }
  bool operator==(const HurstVector&) const = default;

 private:
  std::vector<double> h_;
};

// Sign vectors e in {-1,+1}^N are indexed by a bit mask: bit j set <=> e_j = -1.
// The antipode -e is mask ^ (2^N - 1).
inline int sign_of(unsigned mask, std::size_t j) { return (mask >> j) & 1u ? -1 : 1; }

class StrictWeights {
 public:
  // gamma[mask]; validated: nonnegative, gamma_e = gamma_{-e}, sum 1.
  static StrictWeights from_gamma(std::size_t N, std::vector<double> gamma);
  static StrictWeights uniform(std::size_t N);

  std::size_t dim() const { return n_; }
  double operator[](unsigned mask) const { return g_[mask]; }
  const std::vector<double>& values() const { return g_; }
  bool operator==(const StrictWeights&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> g_;
};

// Checks K_e >= 0, K_e = K_{-e} and sum K_e = prod Gamma(1+2H) sin(pi H) / pi;
// every violation is listed in the thrown WeightError.
StrictWeights validate_weights(const std::vector<double>& raw_K, const HurstVector& H);

enum class ClaimedClass { Strict, MildOnly, None };
const char* to_string(ClaimedClass c);

double cov_fbs(const HurstVector& H, PointView s, PointView t);
double cov_strict_2d(double H1, double H2, double gamma, PointView s, PointView t);
double cov_strict_general(const HurstVector& H, const StrictWeights& w, PointView s, PointView t);
double cov_mild_theta(double H1, double H2, double theta, PointView s, PointView t);
double cov_y_half(double theta, PointView s, PointView t);
double cov_z_half(double gamma, PointView s, PointView t);

// One-coordinate factor of the strict-class covariance for sign e:
// (1/2)[A + i e tan(pi H) B] for H != 1/2, min(t,s) + (i e / pi) L for H = 1/2.
std::complex<double> strict_factor(double H, int e, double s, double t);

class CovKernel {
 public:
  using Fn = std::function<double(PointView, PointView)>;
  CovKernel(std::string name, HurstVector H, ClaimedClass claimed, Fn fn)
      : name_(std::move(name)), h_(std::move(H)), claimed_(claimed), fn_(std::move(fn)) {}

  double operator()(PointView s, PointView t) const;
  std::size_t dim() const { return h_.size(); }
  const HurstVector& hurst() const { return h_; }
  ClaimedClass claimed() const { return claimed_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  HurstVector h_;
  ClaimedClass claimed_;
  Fn fn_;
};

void require_dims(std::size_t N, PointView s, PointView t);

}  // namespace ssf
