#pragma once

#include <stdexcept>
#include <string>

namespace ssf {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised by the quadrature engine when the evaluation budget runs out.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PsdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace ssf
