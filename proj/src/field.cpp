#include "ssfield/field.hpp"

#include <cmath>

#include "ssfield/errors.hpp"
#include "ssfield/moving_average.hpp"
#include "ssfield/special_fn.hpp"

namespace ssf {
namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void theta_warning(double theta, std::vector<std::string>& w) {
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  if (theta < -1 || theta > 1)
    w.push_back("theta = " + num(theta) +
                " lies outside [-1,1]; positive semidefiniteness is only checked numerically");
}
}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"fbs",   "strict", "strict2d", "mild_theta",
                                                 "yhalf", "zhalf",  "moving_pair"};
  return names;
}

std::string family_name(const FieldSpec& spec) { return family_names()[spec.index()]; }

HurstVector hurst_of(const FieldSpec& spec) {
  return std::visit(overloaded{
                        [](const FbsSpec& s) { return s.H; },
                        [](const StrictGeneralSpec& s) { return s.H; },
                        [](const Strict2DSpec& s) { return HurstVector{s.H1, s.H2}; },
                        [](const MildThetaSpec& s) { return HurstVector{s.H1, s.H2}; },
                        [](const YHalfSpec&) { return HurstVector{0.5, 0.5}; },
                        [](const ZHalfSpec&) { return HurstVector{0.5, 0.5}; },
                        [](const MovingPairSpec& s) { return HurstVector{s.H1, s.H2}; },
                    },
                    spec);
}

ClaimedClass claimed_class(const FieldSpec& spec) {
  return std::visit(overloaded{
                        [](const MildThetaSpec& s) {
                          return s.theta == 0 ? ClaimedClass::Strict : ClaimedClass::MildOnly;
                        },
                        [](const YHalfSpec& s) {
                          return s.theta == 0 ? ClaimedClass::Strict : ClaimedClass::MildOnly;
                        },
                        [](const auto&) { return ClaimedClass::Strict; },
                    },
                    spec);
}

std::vector<std::string> validate(const FieldSpec& spec) {
  std::vector<std::string> warn;
  std::visit(overloaded{
                 [](const FbsSpec&) {},
                 [](const StrictGeneralSpec& s) {
                   if (s.weights.dim() != s.H.size())
                     throw DimensionError("strict weights and H dimensions differ");
                 },
                 [](const Strict2DSpec& s) {
                   require_hurst(s.H1);
                   require_hurst(s.H2);
                   if (!(s.gamma >= -1 && s.gamma <= 1))
                     throw DomainError("strict2d gamma must lie in [-1,1], got " + num(s.gamma));
                 },
                 [&](const MildThetaSpec& s) {
                   require_hurst(s.H1);
                   require_hurst(s.H2);
                   theta_warning(s.theta, warn);
                 },
                 [&](const YHalfSpec& s) { theta_warning(s.theta, warn); },
                 [&](const ZHalfSpec& s) {
                   if (!(s.gamma >= -1 && s.gamma <= 1))
                     throw DomainError("zhalf gamma must lie in [-1,1], got " + num(s.gamma));
                   if (!(s.gamma > 0))
                     warn.push_back("zhalf gamma = " + num(s.gamma) +
                                    " lies outside (0,1]; the dependence result needs gamma > 0");
                 },
                 [](const MovingPairSpec& s) {
                   require_hurst(s.H1);
                   require_hurst(s.H2);
                   if ((s.H1 == 0.5) != (s.H2 == 0.5))
                     throw DomainError(
                         "moving_pair needs both or neither H_j equal to 1/2; mixed vectors have no "
                         "moving-average kernel");
                   auto dd = validate_dd(s.H1, s.H2, s.d0, s.d1);
                   if (!dd.pass)
                     throw DomainError(
                         "moving_pair constants violate d0^2 + 2 d0 d1 sin(pi H1) sin(pi H2) + d1^2 "
                         "= 1: residual " +
                         num(dd.residual));
                 },
             },
             spec);
  return warn;
}

CovKernel make_kernel(const FieldSpec& spec) {
  validate(spec);
  const std::string name = family_name(spec);
  const HurstVector H = hurst_of(spec);
  const ClaimedClass cls = claimed_class(spec);
  CovKernel::Fn fn = std::visit(
      overloaded{
          [](const FbsSpec& s) -> CovKernel::Fn {
            return [H = s.H](PointView a, PointView b) { return cov_fbs(H, a, b); };
          },
          [](const StrictGeneralSpec& s) -> CovKernel::Fn {
            return [s](PointView a, PointView b) { return cov_strict_general(s.H, s.weights, a, b); };
          },
          [](const Strict2DSpec& s) -> CovKernel::Fn {
            return [s](PointView a, PointView b) { return cov_strict_2d(s.H1, s.H2, s.gamma, a, b); };
          },
          [](const MildThetaSpec& s) -> CovKernel::Fn {
            return [s](PointView a, PointView b) { return cov_mild_theta(s.H1, s.H2, s.theta, a, b); };
          },
          [](const YHalfSpec& s) -> CovKernel::Fn {
            return [s](PointView a, PointView b) { return cov_y_half(s.theta, a, b); };
          },
          [](const ZHalfSpec& s) -> CovKernel::Fn {
            return [s](PointView a, PointView b) { return cov_z_half(s.gamma, a, b); };
          },
          [](const MovingPairSpec& s) -> CovKernel::Fn {
            auto g = moving_pair_kernel(s.H1, s.H2, s.d0, s.d1);
            return [g](PointView a, PointView b) {
              for (std::size_t k = 0; k < 2; ++k)
                if (a[k] == 0 || b[k] == 0) return 0.0;
              return cov_from_ma(g, a, b).value;
            };
          },
      },
      spec);
  return CovKernel(name, H, cls, std::move(fn));
}

StrictWeights strict2d_weights(double gamma) {
  if (!(gamma >= -1 && gamma <= 1)) throw DomainError("strict2d gamma must lie in [-1,1]");
  double same = (1 - gamma) / 4, mixed = (1 + gamma) / 4;
  // masks: 0 = (+,+), 1 = (-,+), 2 = (+,-), 3 = (-,-)
  return StrictWeights::from_gamma(2, {same, mixed, mixed, same});
}

FieldSpec default_spec(const std::string& family) {
  if (family == "fbs") return FbsSpec{{0.3, 0.7}};
  if (family == "strict")
    return StrictGeneralSpec{{0.3, 0.7}, StrictWeights::from_gamma(2, {0.35, 0.15, 0.15, 0.35})};
  if (family == "strict2d") return Strict2DSpec{0.3, 0.7, 0.5};
  if (family == "mild_theta") return MildThetaSpec{0.3, 0.7, 0.5};
  if (family == "yhalf") return YHalfSpec{1.0};
  if (family == "zhalf") return ZHalfSpec{1.0};
  if (family == "moving_pair") {
    // Point on the constraint curve with d0 = 0.8.
    double H1 = 0.3, H2 = 0.7, d0 = 0.8;
    double b = d0 * std::sin(kPi * H1) * std::sin(kPi * H2);
    double d1 = -b + std::sqrt(b * b - (d0 * d0 - 1));
    return MovingPairSpec{H1, H2, d0, d1};
  }
  throw ConfigError("unknown family '" + family + "'");
}

}  // namespace ssf
