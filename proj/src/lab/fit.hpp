#pragma once

#include <cstdint>
#include <vector>

namespace zkd::lab {

// One (j, k) cell of a dyadic scan.
struct ScanCell {
  int j = 0;
  int k = 0;
  double measured = 0.0;
  double bound = 0.0;  // exponent-only envelope 2^{a j + b k}, constant 1
  double ratio = 0.0;  // measured / bound
  int samples = 0;
};

// log2(measured) ~ intercept + slope_j j + slope_k k. A slope is NaN when its
// index does not vary across the cells.
struct PlaneFit {
  double intercept = 0.0;
  double slope_j = 0.0;
  double slope_k = 0.0;
  double max_residual = 0.0;
  double min_residual = 0.0;
};

// Throws kInsufficientData with fewer cells than free parameters.
PlaneFit FitPlane(const std::vector<ScanCell>& cells);

struct ScanReport {
  std::vector<ScanCell> cells;
  PlaneFit fit;
  double expected_slope_j = 0.0;
  double expected_slope_k = 0.0;
  double uniform_constant = 0.0;  // max ratio: the single C with measured <= C bound
  double min_ratio = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// Fills fit, uniform_constant and min_ratio from cells.
void Summarize(ScanReport& report);

}  // namespace zkd::lab
