#include "lab/strichartz.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "spectral_ops.hpp"

namespace zkd::lab {
namespace {

double Trapezoid(const std::vector<double>& values, double t_end) {
  if (values.size() < 2) return 0.0;
  const double h = t_end / static_cast<double>(values.size() - 1);
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * h;
}

struct Mode {
  int m;
  int n;
  Complex c;
  double omega;
};

// One random trial on cell (j, k). Only the n >= 0 half of the spectrum is
// stored; the real inverse transform supplies the conjugate half.
double Trial(const StrichartzScanConfig& cfg, int j, int k, std::mt19937_64& rng) {
  const int nx = cfg.refinement * std::max(8, 2 << j);
  const int ny = cfg.refinement * std::max(8, 2 << k);
  const int half = ny / 2 + 1;

  std::vector<Mode> modes;
  const int m_lo = 1 << (j - 1);
  const int m_hi = 1 << j;
  if (k == 0) {
    for (int m = m_lo; m < m_hi; ++m) {
      const Complex c(Normal(rng), Normal(rng));
      modes.push_back({m, 0, c, 0.0});
      modes.push_back({-m, 0, std::conj(c), 0.0});
    }
  } else {
    for (int m = m_lo; m < m_hi; ++m) {
      for (int sgn : {1, -1}) {
        for (int n = 1 << (k - 1); n < (1 << k); ++n) {
          modes.push_back({sgn * m, n, Complex(Normal(rng), Normal(rng)), 0.0});
        }
      }
    }
  }
  double energy = 0.0;
  for (const Mode& md : modes) energy += std::norm(md.c);
  if (k > 0) energy *= 2.0;  // the implicit n < 0 half
  const double scale = 1.0 / (2.0 * std::numbers::pi * std::sqrt(energy));
  for (Mode& md : modes) {
    md.c *= scale;
    md.omega = DispersionRelation(md.m, md.n, cfg.symbol);
  }

  const double t_end = std::ldexp(1.0, -(j + k));
  std::vector<Complex> spectrum(static_cast<std::size_t>(nx) * half);
  std::vector<double> samples(static_cast<std::size_t>(nx) * ny);
  std::vector<double> sup_sq(static_cast<std::size_t>(cfg.time_samples));
  for (int i = 0; i < cfg.time_samples; ++i) {
    const double t = t_end * i / (cfg.time_samples - 1);
    for (const Mode& md : modes) {
      const int row = md.m >= 0 ? md.m : md.m + nx;
      spectrum[static_cast<std::size_t>(row) * half + md.n] = md.c * std::polar(1.0, md.omega * t);
    }
    fft::BackwardReal2d(nx, ny, spectrum, samples);
    double peak = 0.0;
    for (double v : samples) peak = std::max(peak, std::abs(v));
    sup_sq[static_cast<std::size_t>(i)] = peak * peak;
  }
  return std::sqrt(Trapezoid(sup_sq, t_end));
}

}  // namespace

double StrichartzNorm(const SpectralField& phi, const DispersionSymbol& symbol, double t_end,
                      int time_samples, int refinement) {
  Require(time_samples >= 2, ErrorCode::kInsufficientData, "need at least 2 time samples");
  Require(t_end >= 0.0, ErrorCode::kInvalidArgument, "time window must be non-negative");
  std::vector<double> sup_sq(static_cast<std::size_t>(time_samples));
  for (int i = 0; i < time_samples; ++i) {
    const double t = t_end * i / (time_samples - 1);
    const double s = SupNorm(Propagate(phi, t, symbol), refinement);
    sup_sq[static_cast<std::size_t>(i)] = s * s;
  }
  return std::sqrt(Trapezoid(sup_sq, t_end));
}

void StrichartzScanConfig::Validate() const {
  symbol.Validate();
  Require(j_min >= 1 && j_max >= j_min, ErrorCode::kValidation,
          "strichartz j range must satisfy 1 <= j_min <= j_max (the j = 0 shell is excluded)");
  Require(k_min >= 0 && k_max >= k_min, ErrorCode::kValidation,
          "strichartz k range must satisfy 0 <= k_min <= k_max");
  Require(j_max + k_max <= 20, ErrorCode::kValidation, "strichartz scan needs 2^{j+k} <= 2^20");
  Require(trials >= 1, ErrorCode::kInsufficientData, "strichartz scan needs trials >= 1");
  Require(time_samples >= 64, ErrorCode::kValidation, "strichartz.time_samples must be >= 64");
  Require(refinement >= 1, ErrorCode::kValidation, "strichartz.refinement must be >= 1");
  Require(epsilon > 0.0, ErrorCode::kValidation, "strichartz epsilon must be > 0");
}

ScanReport StrichartzScan(const StrichartzScanConfig& config) {
  config.Validate();
  const int nj = config.j_max - config.j_min + 1;
  const int nk = config.k_max - config.k_min + 1;
  const std::size_t cells = static_cast<std::size_t>(nj * nk);
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  std::vector<double> values(cells * trials);
  ParallelFor(values.size(), config.workers, [&](std::size_t idx) {
    const std::size_t cell = idx / trials;
    const int j = config.j_min + static_cast<int>(cell) / nk;
    const int k = config.k_min + static_cast<int>(cell) % nk;
    auto rng = CellRng(config.seed, idx);
    values[idx] = Trial(config, j, k, rng);
  });

  ScanReport report;
  report.seed = config.seed;
  report.epsilon = config.epsilon;
  report.expected_slope_j = -1.0 / std::ldexp(1.0, config.symbol.alpha + 2) + config.epsilon;
  report.expected_slope_k = -config.symbol.beta / 4.0 + config.epsilon;
  report.cells.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    ScanCell& cell = report.cells[c];
    cell.j = config.j_min + static_cast<int>(c) / nk;
    cell.k = config.k_min + static_cast<int>(c) % nk;
    for (std::size_t t = 0; t < trials; ++t) {
      cell.measured = std::max(cell.measured, values[c * trials + t]);
    }
    cell.samples = config.trials;
    const double exponent = report.expected_slope_j * cell.j +
                            (cell.k == 0 ? 0.0 : report.expected_slope_k * cell.k);
    cell.bound = std::exp2(exponent);
    cell.ratio = cell.measured / cell.bound;
  }
  Summarize(report);
  return report;
}

}  // namespace zkd::lab
