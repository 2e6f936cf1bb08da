#pragma once

#include <cstdint>

#include "lab/fit.hpp"
#include "propagator.hpp"
#include "spectral_field.hpp"

namespace zkd::lab {

// Discrete L^2_t L^inf_xy norm of W(t) phi over t in [0, t_end]: `time_samples`
// equispaced times (trapezoid in t), sup over the grid refined by `refinement`.
double StrichartzNorm(const SpectralField& phi, const DispersionSymbol& symbol, double t_end,
                      int time_samples = 64, int refinement = 4);

struct StrichartzScanConfig {
  DispersionSymbol symbol;
  int j_min = 3, j_max = 7;
  int k_min = 3, k_max = 7;
  int trials = 20;
  int time_samples = 64;
  int refinement = 4;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  int workers = 1;

  void Validate() const;
};

// Random real unit-L^2 data on the dyadic shell (j in x, k in y), max over
// trials of the windowed norm on [0, 2^{-(j+k)}], fitted in log2 against
// (j, k). Cells with k = 0 use the j-only envelope.
ScanReport StrichartzScan(const StrichartzScanConfig& config);

}  // namespace zkd::lab
