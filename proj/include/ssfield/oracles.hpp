#pragma once

#include <string>
#include <vector>

#include "ssfield/special_fn.hpp"

namespace ssf {

struct LemmaPair {
  Complex numeric;
  Complex closed;
  double abs_err() const { return std::abs(numeric - closed); }
};

// int_0^inf (e^{ity} - 1)(e^{-isy} - 1) y^{-2H-1} dy, H != 1/2.
LemmaPair lemma1_check(double H, double s, double t, double tol = 1e-9);

// Same integral with y^{-2}.
LemmaPair lemma2_check(double s, double t, double tol = 1e-9);

// int_0^inf (e^{i(t-x) eps y} - e^{-i x eps y}) / (i eps y^{H+1/2}) dy.
LemmaPair lemma3_check(double H, int eps, double t, double x, double tol = 1e-9);

// int_0^inf (e^{i(t-x) eps y} - e^{-i x eps y}) / (i eps y) dy
//   = pi 1[0,t](x) + i eps (log|t-x| - log|x|).
LemmaPair lemma4_check(int eps, double t, double x, double tol = 1e-9);

// The form with the opposite imaginary sign, kept to document the mismatch.
Complex lemma4_closed_opposite_sign(int eps, double t, double x);

// (u)_+^a with 0 for u <= 0, also when a < 0.
double pos_pow(double u, double a);

struct OracleRow {
  std::string lemma;
  std::string params;
  Complex numeric;
  Complex closed;
  double abs_err;
  bool pass;
};

// Sweep over H in {0.1,0.3,0.7,0.9}, (s,t) in {(1,1),(1,2),(2,1),(0.5,3)},
// x in {-1, t/2, t+1} and eps = +-1.
std::vector<OracleRow> lemma_sweep(double pass_tol = 1e-6);

}  // namespace ssf
