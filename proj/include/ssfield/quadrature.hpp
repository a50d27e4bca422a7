#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "ssfield/special_fn.hpp"

namespace ssf {

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;
};

template <class T>
using Integrand = std::function<T(double)>;

inline constexpr std::size_t kDefaultEvalBudget = 100000;

// Shared evaluation counter; throws QuadratureError once exhausted.
class EvalBudget {
 public:
  explicit EvalBudget(std::size_t max_evals = kDefaultEvalBudget) : max_(max_evals) {}
  void charge(std::size_t n);
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return max_ - used_; }

 private:
  std::size_t max_;
  std::size_t used_ = 0;
};

// Singularity exponents at the endpoints: f ~ |x - end|^{-sigma}, sigma < 1.
// A logarithmic singularity is declared with kLogSingularity.
struct EndpointBehaviour {
  double left = 0;
  double right = 0;
};
inline constexpr double kLogSingularity = 2.0 / 3.0;

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0;
  std::size_t max_evals = kDefaultEvalBudget;
};

// Finite interval [a, b] by globally adaptive Gauss-Kronrod 7/15 with
// endpoint grading x = a + (m - a) u^{1/(1 - sigma)}.
template <class T>
QuadResult<T> integrate_finite(const Integrand<T>& f, double a, double b,
                               const QuadOptions& opt, EndpointBehaviour ends = {},
                               EvalBudget* budget = nullptr);

// [a, inf) for f ~ C x^{-q}, q > 1, via x = a + L (u^{-1/(q-1)} - 1).
template <class T>
QuadResult<T> integrate_algebraic_tail(const Integrand<T>& f, double a, double q,
                                       const QuadOptions& opt, EvalBudget* budget = nullptr,
                                       double left_sigma = 0);

// [a, inf) for f = (slowly varying amplitude) x (oscillation of angular
// frequency omega): half-period panels summed with Wynn epsilon acceleration.
template <class T>
QuadResult<T> integrate_oscillatory_tail(const Integrand<T>& f, double a, double omega,
                                         const QuadOptions& opt, EvalBudget* budget = nullptr,
                                         double left_sigma = 0);

struct Domain {
  double a = 0;
  double b = std::numeric_limits<double>::infinity();
};

// Front end. For b = inf the integrand is treated as an oscillatory tail when
// omega > 0, otherwise as an algebraic tail with exponent decay_q.
struct TailHint {
  double omega = 0;
  double decay_q = 2;
};

template <class T>
QuadResult<T> integrate_1d(const Integrand<T>& f, Domain d, double tol,
                           EndpointBehaviour ends = {}, TailHint tail = {});

// Structured oscillatory power tail:
//   sum_k coef_k * int_a^inf y^{-q} e^{i omega_k y} amp(y) dy
// with the zero-frequency part integrated algebraically and every nonzero
// frequency by half-period panels. amp must tend to 1 (or be 1).
struct Wave {
  Complex coef;
  double omega;
};
QuadResult<Complex> integrate_power_waves(const std::vector<Wave>& waves, double a, double q,
                                          const QuadOptions& opt, EvalBudget* budget = nullptr);

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
// estimate and writes a heuristic error.
template <class T>
T wynn_epsilon(const std::vector<T>& sums, double* err);

}  // namespace ssf
