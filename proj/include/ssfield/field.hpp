#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ssfield/cov_kernels.hpp"

namespace ssf {

struct FbsSpec {
  HurstVector H;
  bool operator==(const FbsSpec&) const = default;
};
struct StrictGeneralSpec {
  HurstVector H;
  StrictWeights weights;
  bool operator==(const StrictGeneralSpec&) const = default;
};
struct Strict2DSpec {
  double H1, H2, gamma;
  bool operator==(const Strict2DSpec&) const = default;
};
struct MildThetaSpec {
  double H1, H2, theta;
  bool operator==(const MildThetaSpec&) const = default;
};
struct YHalfSpec {
  double theta;
  bool operator==(const YHalfSpec&) const = default;
};
struct ZHalfSpec {
  double gamma;
  bool operator==(const ZHalfSpec&) const = default;
};
struct MovingPairSpec {
  double H1, H2, d0, d1;
  bool operator==(const MovingPairSpec&) const = default;
};

using FieldSpec = std::variant<FbsSpec, StrictGeneralSpec, Strict2DSpec, MildThetaSpec, YHalfSpec,
                               ZHalfSpec, MovingPairSpec>;

// "fbs", "strict", "strict2d", "mild_theta", "yhalf", "zhalf", "moving_pair"
std::string family_name(const FieldSpec& spec);
const std::vector<std::string>& family_names();

HurstVector hurst_of(const FieldSpec& spec);
ClaimedClass claimed_class(const FieldSpec& spec);

// Throws on violated constraints; returns warnings for accepted but unproven
// parameter ranges.
std::vector<std::string> validate(const FieldSpec& spec);

CovKernel make_kernel(const FieldSpec& spec);

FieldSpec default_spec(const std::string& family);

// gamma_{++} = gamma_{--} = (1 - g)/4, gamma_{+-} = gamma_{-+} = (1 + g)/4.
StrictWeights strict2d_weights(double gamma);

}  // namespace ssf
