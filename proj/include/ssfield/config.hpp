#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssfield/field.hpp"

namespace ssf {

enum class Command { Cov, Density, Check, Classify, Simulate, Mc, LimitDemo };
const char* command_name(Command c);
Command parse_command(const std::string& name);

struct GridConfig {
  double lo = 0.5;
  double hi = 2.5;
  std::size_t n = 5;          // points per axis of the tensor grid
  std::vector<Point> points;  // explicit points override the tensor grid
  bool operator==(const GridConfig&) const = default;
};

struct ProbeConfig {
  std::size_t pairs = 20;
  std::size_t shifts = 10;
  double u_box = 2;
  double h_box = 3;
  bool operator==(const ProbeConfig&) const = default;
};

struct LimitConfig {
  std::size_t r1 = 256;
  std::size_t r2 = 256;
  std::size_t n_reps = 2000;
  std::vector<Point> t_grid;  // empty: {0.5,1,1.5,2}^2
  bool operator==(const LimitConfig&) const = default;
};

struct RunConfig {
  Command command = Command::Cov;
  FieldSpec spec = FbsSpec{{0.3, 0.7}};
  std::optional<Point> s, t, x;
  std::string suite = "lemmas";
  GridConfig grid;
  ProbeConfig probes;
  LimitConfig limit;
  std::uint64_t seed = 20161011;
  std::size_t n_samples = 5000;
  double tol = 1e-6;
  std::string out = "ssfield_out";
  int workers = 0;  // 0: OpenMP default
  bool operator==(const RunConfig&) const = default;
};

// Strict JSON schema: unknown keys and wrong types are ConfigErrors carrying
// the field path (or line:column for syntax errors).
RunConfig parse_config(std::string_view text);
std::string config_to_json(const RunConfig& c);

std::vector<Point> default_limit_grid();

}  // namespace ssf
