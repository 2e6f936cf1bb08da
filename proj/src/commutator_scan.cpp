#include "commutator_scan.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "initial_data.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace zkd {

void CommutatorScanConfig::Validate() const {
  Require(pairs >= 1, ErrorCode::kInsufficientData, "commutator scan needs pairs >= 1");
  Require(band >= 1 && 2 * band < std::min(grid.nx(), grid.ny()), ErrorCode::kValidation,
          "commutator band must satisfy 1 <= band < min(nx, ny) / 2");
  Require(!s_list.empty(), ErrorCode::kValidation, "commutator s_list is empty");
  for (double s : s_list) {
    Require(s >= 1.0, ErrorCode::kInvalidArgument, "commutator estimate needs s >= 1");
  }
}

CommutatorScanReport CommutatorScan(const CommutatorScanConfig& config) {
  config.Validate();
  const std::size_t ns = config.s_list.size();
  CommutatorScanReport report;
  report.seed = config.seed;
  report.rows.resize(static_cast<std::size_t>(config.pairs) * ns);
  ParallelFor(static_cast<std::size_t>(config.pairs), config.workers, [&](std::size_t p) {
    auto rng = CellRng(config.seed, p);
    const double af = std::exp2(Uniform(rng, std::log2(0.1), std::log2(10.0)));
    const double ag = std::exp2(Uniform(rng, std::log2(0.1), std::log2(10.0)));
    const std::uint64_t sf = rng();
    const std::uint64_t sg = rng();
    const auto f = RandomBandLimited(config.grid, config.band, config.band, af, sf, false);
    const auto g = RandomBandLimited(config.grid, config.band, config.band, ag, sg, false);
    for (std::size_t i = 0; i < ns; ++i) {
      auto& row = report.rows[p * ns + i];
      row.pair = static_cast<int>(p);
      row.s = config.s_list[i];
      row.result = CommutatorCheck(f, g, row.s);
      row.ratio = row.result.rhs > 0 ? row.result.lhs / row.result.rhs : 0.0;
    }
  });
  report.max_ratio_by_s.assign(ns, 0.0);
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    auto& m = report.max_ratio_by_s[r % ns];
    m = std::max(m, report.rows[r].ratio);
  }
  report.max_ratio = *std::max_element(report.max_ratio_by_s.begin(), report.max_ratio_by_s.end());

  SpectralField constant(config.grid);
  constant.at(0, 0) = 1.7;
  auto rng = CellRng(config.seed, 0);
  const auto g = RandomBandLimited(config.grid, config.band, config.band, 1.0, rng(), false);
  for (double s : config.s_list) {
    report.constant_f_lhs = std::max(report.constant_f_lhs, CommutatorCheck(constant, g, s).lhs);
  }
  return report;
}

}  // namespace zkd
