#include "lab/weyl.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace zkd::lab {
namespace {

using u128 = unsigned __int128;
using i128 = __int128;

constexpr std::int64_t kLambdaCap = std::int64_t{1} << 62;

double Frac(double x) { return x - std::floor(x); }

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void Add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

bool Satisfies(double r, std::int64_t a, std::int64_t q, std::int64_t lambda) {
  const long double gap = std::fmal(static_cast<long double>(r), static_cast<long double>(q),
                                    -static_cast<long double>(a));
  return std::abs(gap) * static_cast<long double>(lambda) <= 1.0L;
}

RationalApprox Exhaustive(double r, std::int64_t lambda) {
  const std::int64_t limit = std::min<std::int64_t>(lambda, std::int64_t{1} << 22);
  for (std::int64_t q = 1; q <= limit; ++q) {
    const auto a = static_cast<std::int64_t>(std::llround(static_cast<long double>(r) * q));
    if (Satisfies(r, a, q, lambda)) {
      const std::int64_t g = std::gcd(a < 0 ? -a : a, q);
      return {a / g, q / g};
    }
  }
  Fail(ErrorCode::kInternal, "no rational approximation found for r = " + std::to_string(r));
}

}  // namespace

void WeylInstance::Validate() const {
  Require(coeffs.size() >= 2, ErrorCode::kInvalidArgument, "Weyl instance needs degree >= 1");
  Require(n >= 1, ErrorCode::kInvalidArgument, "Weyl instance needs N >= 1");
  Require(lambda >= 1, ErrorCode::kInvalidArgument, "Weyl instance needs Lambda >= 1");
  Require(delta > 0.0, ErrorCode::kInvalidArgument, "Weyl instance needs delta > 0");
  Require(degree() * std::bit_width(static_cast<std::uint64_t>(n)) <= 120,
          ErrorCode::kInvalidArgument, "N^d must stay below 2^120");
  for (double c : coeffs) {
    Require(std::isfinite(c), ErrorCode::kInvalidArgument, "Weyl coefficients must be finite");
  }
}

double FracPolynomial(const std::vector<double>& coeffs, std::int64_t m) {
  const u128 base = static_cast<u128>(m < 0 ? -m : m);
  const bool negative = m < 0;
  long double acc = 0.0L;
  u128 power = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double c = (negative && (i % 2 == 1)) ? -coeffs[i] : coeffs[i];
    // c * power exactly: 26-bit chunks times a 53-bit double fit the
    // two-product p + e with no rounding.
    u128 rest = power;
    int shift = 0;
    while (rest != 0) {
      const double chunk = static_cast<double>(static_cast<std::uint64_t>(rest & 0x3ffffffu));
      const double p = c * chunk;
      const double e = std::fma(c, chunk, -p);
      acc += Frac(std::ldexp(p, shift));
      acc += Frac(std::ldexp(e, shift));
      rest >>= 26;
      shift += 26;
    }
    power *= base;
  }
  double f = static_cast<double>(acc - std::floor(acc));
  if (f >= 1.0) f = 0.0;
  return f;
}

std::complex<double> WeylSum(const WeylInstance& instance) {
  instance.Validate();
  CompensatedSum re;
  CompensatedSum im;
  for (std::int64_t m = 1; m <= instance.n; ++m) {
    double f = FracPolynomial(instance.coeffs, m);
    if (f >= 0.5) f -= 1.0;
    const double angle = 2.0 * std::numbers::pi * f;
    re.Add(std::cos(angle));
    im.Add(std::sin(angle));
  }
  return {re.value(), im.value()};
}

RationalApprox DirichletApprox(double r, std::int64_t lambda) {
  Require(lambda >= 1, ErrorCode::kInvalidArgument, "Dirichlet approximation needs Lambda >= 1");
  Require(std::isfinite(r) && std::abs(r) < 0x1.0p62, ErrorCode::kInvalidArgument,
          "Dirichlet approximation needs finite |r| < 2^62");
  const double a0 = std::floor(r);
  const double f = r - a0;  // exact, in [0, 1)
  const auto whole = static_cast<i128>(a0);

  // Exact continued fraction of the binary fraction f = num / 2^e.
  i128 p_prev = 1, q_prev = 0, p = 0, q = 1;
  int e = 0;
  double scaled = f;
  while (scaled != std::floor(scaled) && e < 127) {
    scaled *= 2.0;
    ++e;
  }
  if (f != 0.0 && e < 127) {
    u128 num = static_cast<u128>(scaled);
    u128 den = static_cast<u128>(1) << e;
    while (num != 0) {
      const u128 a = den / num;
      const u128 rem = den % num;
      if (a > static_cast<u128>((lambda - static_cast<std::int64_t>(q_prev)) / q)) break;
      const i128 p_next = static_cast<i128>(a) * p + p_prev;
      const i128 q_next = static_cast<i128>(a) * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = p_next;
      q = q_next;
      den = num;
      num = rem;
    }
  }
  // Past 2^-126 f is below any admissible 1/Lambda, and 0/1 already works.
  const i128 a_full = whole * q + p;
  Require(a_full >= std::numeric_limits<std::int64_t>::min() &&
              a_full <= std::numeric_limits<std::int64_t>::max(),
          ErrorCode::kInvalidArgument, "numerator a overflows 64 bits; reduce |r| or Lambda");
  RationalApprox result{static_cast<std::int64_t>(a_full), static_cast<std::int64_t>(q)};
  if (!Satisfies(r, result.a, result.q, lambda)) result = Exhaustive(r, lambda);
  return result;
}

double WeylBound(double n, double q, int d, double delta) {
  Require(n > 0 && q > 0 && d >= 1 && delta > 0, ErrorCode::kInvalidArgument,
          "Weyl bound needs positive N, q, d, delta");
  const long double nn = n;
  const long double bracket = 1.0L / q + 1.0L / nn + static_cast<long double>(q) / std::pow(nn, d);
  const long double exponent = 1.0L / std::ldexp(1.0L, d - 1);
  return static_cast<double>(std::pow(nn, 1.0L + delta) * std::pow(bracket, exponent));
}

std::int64_t ResolveLambda(LambdaRule rule, int degree, std::int64_t n, std::int64_t fixed) {
  auto power = [](std::int64_t base, int exp) {
    long double v = 1.0L;
    for (int i = 0; i < exp; ++i) v *= static_cast<long double>(base);
    return v;
  };
  long double value = 1.0L;
  switch (rule) {
    case LambdaRule::kFixed: value = static_cast<long double>(fixed); break;
    case LambdaRule::kPowerN: value = power(n, std::max(1, degree - 1)); break;
    case LambdaRule::kDyadic:
      value = degree == 3 ? 32.0L * power(n, 2) : power(n, std::max(1, degree - 1));
      break;
  }
  if (value >= static_cast<long double>(kLambdaCap)) return kLambdaCap;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(value));
}

void WeylScanConfig::Validate() const {
  Require(degree >= 1, ErrorCode::kValidation, "weyl.degree must be >= 1");
  Require(n_min >= 1 && n_max >= n_min, ErrorCode::kValidation,
          "weyl.n_min / weyl.n_max must satisfy 1 <= n_min <= n_max");
  Require(leading_grid > 0 || trials >= 1, ErrorCode::kValidation, "weyl.trials must be >= 1");
  Require(delta > 0.0, ErrorCode::kValidation, "weyl.delta must be > 0");
  Require(rule != LambdaRule::kFixed || fixed_lambda >= 1, ErrorCode::kValidation,
          "weyl.lambda must be >= 1");
}

WeylScanReport WeylScan(const WeylScanConfig& config) {
  config.Validate();
  const int count = config.leading_grid > 0 ? config.leading_grid : config.trials;
  WeylScanReport report;
  report.seed = config.seed;
  report.rows.resize(static_cast<std::size_t>(count));
  ParallelFor(report.rows.size(), config.workers, [&](std::size_t i) {
    auto rng = CellRng(config.seed, i);
    WeylInstance inst;
    inst.delta = config.delta;
    inst.coeffs.resize(static_cast<std::size_t>(config.degree) + 1);
    for (auto& c : inst.coeffs) c = Uniform01(rng);
    if (config.leading_grid > 0) {
      inst.n = config.n_max;
      inst.coeffs.back() = static_cast<double>(i) / config.leading_grid;
    } else {
      inst.n = UniformInt(rng, config.n_min, config.n_max);
    }
    inst.lambda = ResolveLambda(config.rule, config.degree, inst.n, config.fixed_lambda);
    WeylScanRow& row = report.rows[i];
    row.trial = static_cast<int>(i);
    row.n = inst.n;
    row.leading = inst.coeffs.back();
    row.lambda = inst.lambda;
    row.approx = DirichletApprox(row.leading, inst.lambda);
    const long double gap = std::fmal(static_cast<long double>(row.leading),
                                      static_cast<long double>(row.approx.q),
                                      -static_cast<long double>(row.approx.a));
    row.dirichlet_error = static_cast<double>(std::abs(gap) * inst.lambda);
    row.abs_sum = std::abs(WeylSum(inst));
    row.bound = WeylBound(static_cast<double>(inst.n), static_cast<double>(row.approx.q),
                          config.degree, config.delta);
    row.ratio = row.abs_sum / row.bound;
  });
  for (const auto& row : report.rows) {
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.max_dirichlet_error = std::max(report.max_dirichlet_error, row.dirichlet_error);
    if (row.abs_sum > static_cast<double>(row.n) * (1.0 + 1e-12)) report.trivial_bound_ok = false;
    const int octave = std::bit_width(static_cast<std::uint64_t>(row.n)) - 1;
    auto& slot = report.max_ratio_by_octave[octave];
    slot = std::max(slot, row.ratio);
  }
  return report;
}

}  // namespace zkd::lab
