#include "lab/kernel.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "lab/bump.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace zkd::lab {
namespace {

// Integers w with psi1(w / 2^s) > 0, i.e. 2^{s-2} < |w| < 2^{s+2}; positive half.
std::vector<int> PositiveSupport(int s) {
  std::vector<int> out;
  const double scale = std::ldexp(1.0, s);
  for (int w = 1; w < (4 << s); ++w) {
    if (Psi1(w / scale) > 0.0) out.push_back(w);
  }
  return out;
}

}  // namespace

void KernelQuery::Validate() const {
  Require(j >= 1 && k >= 1, ErrorCode::kInvalidArgument, "kernel query needs j, k >= 1");
  Require(l >= j + k, ErrorCode::kInvalidArgument, "kernel query needs l >= j + k");
  Require(j + k <= 20, ErrorCode::kInvalidArgument, "kernel query needs 2^{j+k} <= 2^20");
  symbol.Validate();
}

bool KernelQuery::InTimeWindow() const {
  const double gap = std::abs(t - t_prime);
  return gap > std::ldexp(1.0, -l) && gap <= std::ldexp(1.0, 1 - l);
}

KernelSumResult KernelSum(const KernelQuery& q) {
  q.Validate();
  KernelSumResult out;
  const std::vector<int> ms = PositiveSupport(q.j);
  const std::vector<int> ns = PositiveSupport(q.k);
  out.terms = 4 * static_cast<std::int64_t>(ms.size()) * static_cast<std::int64_t>(ns.size());
  if (out.terms == 0) {
    out.warning = "empty lattice support for the (j, k) cell";
    return out;
  }
  const double window = std::ldexp(1.0, -(q.j + q.k));
  if (std::abs(q.t) > window || std::abs(q.t_prime) > window) return out;

  const double tau = q.t - q.t_prime;
  const double sx = std::ldexp(1.0, q.j);
  const double sy = std::ldexp(1.0, q.k);
  const double sigma = static_cast<int>(q.symbol.sign);
  // n and -n share omega; fold them into 2 cos(n y).
  std::vector<double> wy(ns.size());
  std::vector<double> ny_pow(ns.size());
  for (std::size_t b = 0; b < ns.size(); ++b) {
    const double psi = Psi1(ns[b] / sy);
    wy[b] = 2.0 * psi * psi * std::cos(ns[b] * q.y);
    ny_pow[b] = std::pow(static_cast<double>(ns[b]), 1.0 + q.symbol.beta);
  }
  double re = 0.0;
  double im = 0.0;
  for (int m0 : ms) {
    const double psi = Psi1(m0 / sx);
    const double wx = psi * psi;
    const double mx_pow = std::pow(static_cast<double>(m0), 1.0 + q.symbol.alpha);
    for (int sgn : {1, -1}) {
      const double m = sgn * m0;
      double inner_re = 0.0;
      double inner_im = 0.0;
      for (std::size_t b = 0; b < ns.size(); ++b) {
        const double phase = m * q.x + m * (mx_pow + sigma * ny_pow[b]) * tau;
        inner_re += wy[b] * std::cos(phase);
        inner_im += wy[b] * std::sin(phase);
      }
      re += wx * inner_re;
      im += wx * inner_im;
    }
  }
  out.value = {re, im};
  return out;
}

KernelSumResult KernelSumLocalized(const KernelQuery& query) {
  if (!query.InTimeWindow()) {
    query.Validate();
    return {};
  }
  return KernelSum(query);
}

std::pair<int, int> KernelLWindow(int alpha, int j, int k) {
  const int lo = std::max(j + k, 2 * j);
  int hi = 2 * j + 2;
  if (alpha == 2) hi = (5 * j) / 2;
  if (alpha == 3) hi = 3 * j;
  return {lo, std::max(lo, hi)};
}

void KernelScanConfig::Validate() const {
  symbol.Validate();
  Require(j_min >= 1 && k_min >= 1 && j_max >= j_min && k_max >= k_min, ErrorCode::kValidation,
          "kernel scan ranges must satisfy 1 <= min <= max");
  Require(j_max + k_max <= 20, ErrorCode::kValidation, "kernel scan needs 2^{j+k} <= 2^20");
  Require(samples_per_cell >= 1, ErrorCode::kInsufficientData,
          "kernel scan needs samples_per_cell >= 1");
  Require(epsilon > 0.0, ErrorCode::kValidation, "kernel scan epsilon must be > 0");
  Require(l_span >= 0 && l_span <= 30, ErrorCode::kValidation, "kernel scan l_span must be in [0, 30]");
}

ScanReport KernelDecayScan(const KernelScanConfig& config) {
  config.Validate();
  const int nj = config.j_max - config.j_min + 1;
  const int nk = config.k_max - config.k_min + 1;
  Require(config.mode == KernelScanMode::kCounting || nj * nk >= 3, ErrorCode::kInsufficientData,
          "kernel scan needs at least 3 cells to fit");
  ScanReport report;
  report.seed = config.seed;
  report.epsilon = config.epsilon;
  const double eps2 = 2.0 * config.epsilon;
  if (config.mode == KernelScanMode::kCounting) {
    report.expected_slope_j = 1.0;
    report.expected_slope_k = 1.0;
  } else {
    report.expected_slope_j = -1.0 / std::ldexp(1.0, config.symbol.alpha + 1) + eps2;
    report.expected_slope_k = -config.symbol.beta / 2.0 + eps2;
  }
  report.cells.resize(static_cast<std::size_t>(nj * nk));
  ParallelFor(report.cells.size(), config.workers, [&](std::size_t idx) {
    ScanCell& cell = report.cells[idx];
    cell.j = config.j_min + static_cast<int>(idx) / nk;
    cell.k = config.k_min + static_cast<int>(idx) % nk;
    auto rng = CellRng(config.seed, idx);
    KernelQuery q;
    q.j = cell.j;
    q.k = cell.k;
    q.symbol = config.symbol;
    if (config.mode == KernelScanMode::kCounting) {
      q.l = cell.j + cell.k;
      cell.measured = std::abs(KernelSum(q).value);
      cell.samples = 1;
    } else {
      auto [lo, hi] = KernelLWindow(config.symbol.alpha, cell.j, cell.k);
      if (config.l_rule == KernelLRule::kAdmissible) {
        lo = cell.j + cell.k;
        hi = lo + config.l_span;
      }
      const double window = std::ldexp(1.0, -(cell.j + cell.k));
      for (int s = 0; s < config.samples_per_cell; ++s) {
        q.l = static_cast<int>(UniformInt(rng, lo, hi));
        const double mag = std::ldexp(1.0 + (1.0 - Uniform01(rng)), -q.l);
        const double tau = UniformInt(rng, 0, 1) == 0 ? mag : -mag;
        const double lo_t = std::max(-window, -window - tau);
        const double hi_t = std::min(window, window - tau);
        q.t_prime = Uniform(rng, lo_t, hi_t);
        q.t = q.t_prime + tau;
        // rounding can push t a hair past the window
        q.t = std::clamp(q.t, -window, window);
        q.x = Uniform(rng, 0.0, 2.0 * std::numbers::pi);
        q.y = Uniform(rng, 0.0, 2.0 * std::numbers::pi);
        const double v = std::abs(KernelSum(q).value) * std::ldexp(1.0, -q.l);
        cell.measured = std::max(cell.measured, v);
      }
      cell.samples = config.samples_per_cell;
    }
    cell.bound = std::exp2(report.expected_slope_j * cell.j + report.expected_slope_k * cell.k);
    cell.ratio = cell.measured / cell.bound;
  });
  Summarize(report);
  return report;
}

}  // namespace zkd::lab
