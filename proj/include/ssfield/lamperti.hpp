#pragma once

#include <cstdint>
#include <functional>

#include "ssfield/cov_kernels.hpp"

namespace ssf {

class StationaryCov {
 public:
  using Fn = std::function<double(PointView)>;
  StationaryCov(std::size_t N, Fn fn) : n_(N), fn_(std::move(fn)) {}

  double operator()(PointView v) const;
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  Fn fn_;
};

inline constexpr std::uint64_t kSelfSimilaritySeed = 0x5e1f5a11ULL;

struct SelfSimilarityReport {
  double max_residual;  // |K(as,at) - prod a^{2H} K(s,t)| / sqrt(K(as,as) K(at,at))
  bool pass;
};
SelfSimilarityReport check_self_similarity(const CovKernel& K, int triples = 10,
                                           double tol = 1e-10,
                                           std::uint64_t seed = kSelfSimilaritySeed);

// C(v) = K(e^{-v/2}, e^{v/2}). Throws DomainError when the scaling precheck fails.
StationaryCov lamperti_forward(const CovKernel& K);

// prod (t_k s_k)^{H_k} C(log(t/s)); 0 when a coordinate vanishes.
double lamperti_inverse(const StationaryCov& C, const HurstVector& H, PointView s, PointView t);
CovKernel kernel_from_stationary(StationaryCov C, HurstVector H, ClaimedClass claimed,
                                 std::string name);

double c_fbs_stationary(const HurstVector& H, PointView v);
double c_fbs_factor(double H, double v);
double c_theta(double H1, double H2, double theta, PointView v);

// sum_e C(e o v) - 2^N C_fBs(v).
double mild_criterion_residual(const StationaryCov& C, const HurstVector& H, PointView v);

}  // namespace ssf
