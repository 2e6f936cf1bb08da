#pragma once

#include <cstdint>
#include <vector>

#include "diagnostics.hpp"

namespace zkd {

struct CommutatorScanConfig {
  Grid grid{32, 32};
  int band = 8;
  int pairs = 200;
  std::vector<double> s_list{1.0, 1.5, 2.0};
  std::uint64_t seed = 1;
  int workers = 1;

  void Validate() const;
};

struct CommutatorScanRow {
  int pair = 0;
  double s = 0.0;
  CommutatorResult result;
  double ratio = 0.0;  // lhs / rhs
};

struct CommutatorScanReport {
  std::vector<CommutatorScanRow> rows;
  std::vector<double> max_ratio_by_s;  // aligned with s_list
  double max_ratio = 0.0;
  // lhs for a constant f against the first pair's g, largest over s; must be 0.
  double constant_f_lhs = 0.0;
  std::uint64_t seed = 0;
};

// Pair p draws f and g as independent band-limited random fields with seeds
// derived from (seed, p); amplitudes are drawn in [0.1, 10] to probe scaling.
CommutatorScanReport CommutatorScan(const CommutatorScanConfig& config);

}  // namespace zkd
