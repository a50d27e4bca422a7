#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ssf {

struct CheckRow {
  std::string check;
  std::string params;
  double value;
  double reference;
  double abs_err;
  double tol;
  bool pass;
};

CheckRow make_row(std::string check, std::string params, double value, double reference, double tol);

// g_fbm(H, x) recovered from C_fBs by the cosine transform (1/pi) int_0^inf cos(xv) C(v) dv.
double g_fbm_from_cov(double H, double x, double tol = 1e-10);

std::vector<CheckRow> density_suite(std::uint64_t seed);
std::vector<CheckRow> criteria_suite(std::uint64_t seed);
std::vector<CheckRow> ma_suite(std::uint64_t seed);

}  // namespace ssf
