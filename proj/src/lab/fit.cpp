#include "lab/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace zkd::lab {

PlaneFit FitPlane(const std::vector<ScanCell>& cells) {
  Require(!cells.empty(), ErrorCode::kInsufficientData, "no scan cells to fit");
  bool vary_j = false;
  bool vary_k = false;
  for (const auto& c : cells) {
    Require(c.measured > 0.0 && std::isfinite(c.measured), ErrorCode::kInsufficientData,
            "scan cell with non-positive measurement cannot be fitted");
    vary_j |= c.j != cells.front().j;
    vary_k |= c.k != cells.front().k;
  }
  // columns: 1, j?, k?
  std::vector<int> cols{0};
  if (vary_j) cols.push_back(1);
  if (vary_k) cols.push_back(2);
  const std::size_t p = cols.size();
  Require(cells.size() >= p, ErrorCode::kInsufficientData, "too few scan cells for the fit");

  auto feature = [](const ScanCell& c, int col) {
    return col == 0 ? 1.0 : (col == 1 ? static_cast<double>(c.j) : static_cast<double>(c.k));
  };
  std::array<std::array<double, 4>, 3> a{};
  for (const auto& c : cells) {
    const double y = std::log2(c.measured);
    for (std::size_t r = 0; r < p; ++r) {
      for (std::size_t s = 0; s < p; ++s) a[r][s] += feature(c, cols[r]) * feature(c, cols[s]);
      a[r][3] += feature(c, cols[r]) * y;
    }
  }
  // Gaussian elimination with partial pivoting on the normal equations.
  for (std::size_t r = 0; r < p; ++r) {
    std::size_t piv = r;
    for (std::size_t s = r + 1; s < p; ++s) {
      if (std::abs(a[s][r]) > std::abs(a[piv][r])) piv = s;
    }
    std::swap(a[r], a[piv]);
    Require(std::abs(a[r][r]) > 1e-12, ErrorCode::kInsufficientData, "degenerate scan fit");
    for (std::size_t s = 0; s < p; ++s) {
      if (s == r) continue;
      const double f = a[s][r] / a[r][r];
      for (std::size_t c = r; c < 4; ++c) a[s][c] -= f * a[r][c];
    }
  }
  std::array<double, 3> beta{0.0, std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()};
  for (std::size_t r = 0; r < p; ++r) beta[static_cast<std::size_t>(cols[r])] = a[r][3] / a[r][r];

  PlaneFit fit;
  fit.intercept = beta[0];
  fit.slope_j = beta[1];
  fit.slope_k = beta[2];
  fit.max_residual = -std::numeric_limits<double>::infinity();
  fit.min_residual = std::numeric_limits<double>::infinity();
  for (const auto& c : cells) {
    double pred = fit.intercept;
    if (vary_j) pred += fit.slope_j * c.j;
    if (vary_k) pred += fit.slope_k * c.k;
    const double res = std::log2(c.measured) - pred;
    fit.max_residual = std::max(fit.max_residual, res);
    fit.min_residual = std::min(fit.min_residual, res);
  }
  return fit;
}

void Summarize(ScanReport& report) {
  report.fit = FitPlane(report.cells);
  report.uniform_constant = 0.0;
  report.min_ratio = std::numeric_limits<double>::infinity();
  for (const auto& c : report.cells) {
    report.uniform_constant = std::max(report.uniform_constant, c.ratio);
    report.min_ratio = std::min(report.min_ratio, c.ratio);
  }
}

}  // namespace zkd::lab
