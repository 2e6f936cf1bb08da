// Acceptance run: one PASS/FAIL line per criterion, exit 0 only if all pass.
// Usage: zkdisp_acceptance [--only N[,N...]]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commutator_scan.hpp"
#include "diagnostics.hpp"
#include "parallel.hpp"
#include "initial_data.hpp"
#include "lab/kernel.hpp"
#include "lab/oscillatory.hpp"
#include "lab/strichartz.hpp"
#include "lab/weyl.hpp"
#include "propagator.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "spectral_ops.hpp"
#include "support.hpp"

namespace zkd {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string Fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<DispersionSymbol> AllSymbols() {
  std::vector<DispersionSymbol> out;
  for (int a : {1, 2, 3}) {
    for (double b : {0.25, 0.5, 1.0}) {
      for (auto s : {DispersionSign::kPlus, DispersionSign::kMinus}) {
        DispersionSymbol sym;
        sym.alpha = a;
        sym.beta = b;
        sym.sign = s;
        out.push_back(sym);
      }
    }
  }
  return out;
}

// cos x + sin(x + y), unit amplitude, on a 64^2 grid
SpectralField ReferenceData(const Grid& g) {
  ProfileSpec spec;
  spec.profile = Profile::kTwoMode;
  spec.amplitude = 1.0;
  return MakeInitialData(g, spec);
}

SimulationConfig ReferenceRun() {
  SimulationConfig c;
  c.grid = Grid(64, 64);
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.record_every = 1 << 30;
  return c;
}

Outcome Unitarity() {
  const Grid g(32, 32);
  double worst = 0.0;
  int draws = 0;
  for (const auto& sym : AllSymbols()) {
    for (int i = 0; i < 100; ++i, ++draws) {
      const auto phi = RandomBandLimited(g, 15, 15, 1.0, 1000 + draws);
      auto rng = CellRng(77, draws);
      const double t = Uniform(rng, -100.0, 100.0);
      worst = std::max(worst, std::abs(L2Norm(Propagate(phi, t, sym)) / L2Norm(phi) - 1.0));
    }
  }
  return {worst <= 1e-12, Fmt("max | ||W(t)phi|| / ||phi|| - 1 | = %.2e over %d draws (tol 1e-12)",
                              worst, draws)};
}

Outcome GroupLaw() {
  const Grid g(32, 32);
  double group = 0.0, inverse = 0.0, proj = 0.0;
  int draw = 0;
  for (const auto& sym : AllSymbols()) {
    for (int i = 0; i < 5; ++i, ++draw) {
      const auto f = RandomBandLimited(g, 15, 15, 1.0, 500 + draw);
      auto rng = CellRng(91, draw);
      // dyadic times, so t + s is exact
      const double t = std::ldexp(static_cast<double>(UniformInt(rng, -4096, 4096)), -10);
      const double s = std::ldexp(static_cast<double>(UniformInt(rng, -4096, 4096)), -10);
      group = std::max(group, RelativeDistance(Propagate(Propagate(f, s, sym), t, sym),
                                               Propagate(f, t + s, sym)));
      inverse = std::max(inverse, RelativeDistance(Propagate(Propagate(f, t, sym), -t, sym), f));
      const double scale = L2Norm(f);
      for (int k = 0; k <= 4; ++k) {
        for (Axis axis : {Axis::kX, Axis::kY}) {
          const DyadicShell shell{axis, k};
          proj = std::max(proj, L2Norm(DyadicProject(Propagate(f, t, sym), shell) -
                                       Propagate(DyadicProject(f, shell), t, sym)) / scale);
        }
      }
      proj = std::max(proj, L2Norm(FractionalDerivative(Propagate(f, t, sym), Axis::kY, 0.7) -
                                   Propagate(FractionalDerivative(f, Axis::kY, 0.7), t, sym)) /
                                SobolevNorm(f, 0.7));
    }
  }
  const double worst = std::max({group, inverse, proj});
  return {worst <= 1e-12,
          Fmt("group %.2e, inverse %.2e, projector/multiplier commutation %.2e (tol 1e-12)",
              group, inverse, proj)};
}

Outcome Conservation() {
  auto c = ReferenceRun();
  c.record_every = 100;
  const auto traj = Simulate(c, ReferenceData(c.grid));
  const auto& d = traj.diagnostics;
  double mass = 0.0, energy = 0.0;
  for (const auto& r : d) {
    mass = std::max(mass, std::abs(r.mass - d.front().mass) / d.front().mass);
    energy = std::max(energy, std::abs(r.energy - d.front().energy) / std::abs(d.front().energy));
  }
  return {mass <= 1e-8 && energy <= 1e-6,
          Fmt("N=64 dt=1e-3 t=1: mass drift %.2e (tol 1e-8), energy drift %.2e (tol 1e-6)", mass,
              energy)};
}

Outcome RegularizedIdentity() {
  auto c = ReferenceRun();
  c.t_end = 0.5;
  c.record_every = 100;
  const auto phi = ReferenceData(c.grid);
  const auto fam = SolveRegularizedFamily(c, phi, {1e-2, 1e-3}, DefaultWorkers());
  double worst = 0.0, printed = 0.0;
  std::ostringstream os;
  for (const auto& m : fam.members) {
    worst = std::max(worst, m.identity_residual);
    // the same balance with a single mu factor, for the record
    const auto& last = m.trajectory.diagnostics.back();
    const double m0 = m.trajectory.diagnostics.front().mass;
    printed = std::max(printed, std::abs(m0 - last.mass - 0.5 * last.dissipation_accum) / m0);
    os << Fmt(" mu=%g: %.2e;", m.mu, m.identity_residual);
  }
  return {worst <= 1e-6,
          Fmt("||phi||^2 = ||u||^2 + 2 mu int ||Delta u||^2 at t=0.5:%s max %.2e (tol 1e-6); "
              "single-mu form misses by %.2e",
              os.str().c_str(), worst, printed)};
}

Outcome IntegratorValidity() {
  const std::vector<double> dts{0.04, 0.02, 0.01, 0.005, 0.0025};
  auto base = ReferenceRun();
  const auto phi = ReferenceData(base.grid);
  std::vector<SpectralField> finals;
  for (double dt : dts) {
    auto c = base;
    c.dt = dt;
    finals.push_back(Simulate(c, phi).states.back());
  }
  std::vector<double> diffs, orders;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) diffs.push_back(L2Norm(finals[i] - finals[i + 1]));
  for (std::size_t i = 1; i < diffs.size(); ++i) orders.push_back(std::log2(diffs[i - 1] / diffs[i]));
  // the first halving is pre-asymptotic; judge the last two
  const double order = std::min(orders[orders.size() - 1], orders[orders.size() - 2]);
  auto etd = base;
  auto ifrk = base;
  ifrk.integrator = Integrator::kIfrk4;
  const double agree = L2Norm(Simulate(etd, phi).states.back() - Simulate(ifrk, phi).states.back());
  std::ostringstream os;
  for (double o : orders) os << Fmt(" %.2f", o);
  return {order >= 3.8 && agree <= 1e-7,
          Fmt("ETDRK4 halving orders%s, asymptotic %.2f (>= 3.8); ETDRK4 vs IFRK4 at t=1, "
              "dt=1e-3: %.2e (tol 1e-7)",
              os.str().c_str(), order, agree)};
}

Outcome Strichartz(int alpha) {
  lab::StrichartzScanConfig cfg;
  cfg.symbol.alpha = alpha;
  cfg.workers = DefaultWorkers();
  const auto r = lab::StrichartzScan(cfg);
  const double want_j = -1.0 / std::exp2(alpha + 2) + 0.1;
  const double want_k = -0.25 + 0.1;
  const bool ok = r.fit.slope_j <= want_j && r.fit.slope_k <= want_k &&
                  std::isfinite(r.uniform_constant) && r.uniform_constant > 0;
  return {ok, Fmt("alpha=%d beta=1 j,k in [3,7]: slope_j %.3f (<= %.4f), slope_k %.3f "
                  "(<= %.3f), uniform C %.3f",
                  alpha, r.fit.slope_j, want_j, r.fit.slope_k, want_k, r.uniform_constant)};
}

Outcome Kernel() {
  lab::KernelScanConfig cfg;
  cfg.workers = DefaultWorkers();
  const auto r = lab::KernelDecayScan(cfg);
  const double want_j = -0.25 + 0.1;
  const double want_k = -0.5 + 0.1;
  return {r.fit.slope_j <= want_j && r.fit.slope_k <= want_k,
          Fmt("alpha=beta=1 j,k in [4,8], %d samples/cell, l in [j+k, j+k+2]: slope_j %.3f "
              "(<= %.2f), slope_k %.3f (<= %.2f), C %.3f",
              cfg.samples_per_cell, r.fit.slope_j, want_j, r.fit.slope_k, want_k,
              r.uniform_constant)};
}

Outcome Weyl() {
  lab::WeylScanConfig cfg;
  cfg.workers = DefaultWorkers();
  const auto r = lab::WeylScan(cfg);
  // envelope for the single constant, pinned here
  constexpr double kEnvelope = 10.0;
  const bool ok = r.rows.size() == 10000 && r.max_ratio <= kEnvelope &&
                  r.max_dirichlet_error <= 1.0 && r.trivial_bound_ok;
  return {ok, Fmt("%zu cubic trials, N in [16,2048]: max |S|/bound %.3f (<= %.0f); max "
                  "|r - a/q| Lambda q %.4f (<= 1)",
                  r.rows.size(), r.max_ratio, kEnvelope, r.max_dirichlet_error)};
}

Outcome Oscillatory() {
  const auto draws = lab::OscillatoryScan(100, 1, DefaultWorkers(), 1024);
  double worst = 0.0;
  int converged = 0;
  for (const auto& d : draws) {
    worst = std::max(worst, d.ratio);
    converged += d.result.converged ? 1 : 0;
  }
  return {worst <= 10.0 && converged == 100,
          Fmt("100 draws: max |I| / bound %.3f (<= 10), %d/100 quadrature-converged", worst,
              converged)};
}

Outcome Commutator() {
  CommutatorScanConfig cfg;
  cfg.workers = DefaultWorkers();
  const auto r = CommutatorScan(cfg);
  return {r.max_ratio <= 100.0 && r.constant_f_lhs == 0.0,
          Fmt("200 pairs, s in {1,1.5,2}: max lhs/rhs %.3f (<= 100); constant f lhs = %g", r.max_ratio,
              r.constant_f_lhs)};
}

double GridIntegral(const Grid& g, const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc * g.dx() * g.dy();
}

Outcome Oracles() {
  // transform vs direct DFT at N = 16
  const Grid g16(16, 16);
  auto rng = CellRng(5, 0);
  std::vector<double> samples(g16.size());
  for (auto& s : samples) s = Normal(rng);
  const double dft = testing::MaxAbsDiff(ForwardTransform(g16, samples),
                                         testing::DirectDft(g16, samples));
  // dealiased product vs product on an unaliased fine grid
  const Grid g(32, 32), fine(64, 64);
  const auto u = Dealias(RandomBandLimited(g, 10, 10, 1.0, 5));
  const auto v = Dealias(RandomBandLimited(g, 10, 10, 1.0, 6));
  auto uc = InverseTransform(u);
  const auto vc = InverseTransform(v);
  for (std::size_t i = 0; i < uc.size(); ++i) uc[i] *= vc[i];
  auto uf = InverseTransform(Resample(u, fine));
  const auto vf = InverseTransform(Resample(v, fine));
  for (std::size_t i = 0; i < uf.size(); ++i) uf[i] *= vf[i];
  const double product = testing::MaxAbsDiff(Dealias(ForwardTransform(g, uc)),
                                             Dealias(Resample(ForwardTransform(fine, uf), g)));
  // spectral mass / energy vs grid quadrature
  const Grid g48(48, 48);
  DispersionSymbol sym;
  sym.alpha = 2;
  sym.beta = 0.5;
  const auto w = RandomBandLimited(g48, 10, 10, 2.0, 4);
  const auto ww = InverseTransform(w);
  const auto dx = InverseTransform(FractionalDerivative(w, Axis::kX, 1.5));
  const auto dy = InverseTransform(FractionalDerivative(w, Axis::kY, 0.75));
  std::vector<double> m2(ww.size()), e(ww.size());
  for (std::size_t i = 0; i < ww.size(); ++i) {
    m2[i] = ww[i] * ww[i];
    e[i] = 0.5 * (dx[i] * dx[i] + dy[i] * dy[i]) - ww[i] * ww[i] * ww[i] / 6.0;
  }
  const double mass = std::abs(Mass(w) - GridIntegral(g48, m2)) / Mass(w);
  const double energy = std::abs(Energy(w, sym) - GridIntegral(g48, e)) / std::abs(Energy(w, sym));
  const bool ok = dft <= 1e-10 && product <= 1e-10 && mass <= 1e-9 && energy <= 1e-9;
  return {ok, Fmt("FFT vs DFT %.1e (1e-10), dealiased vs fine product %.1e (1e-10), mass %.1e / "
                  "energy %.1e vs grid quadrature (1e-9)",
                  dft, product, mass, energy)};
}

}  // namespace
}  // namespace zkd

int main(int argc, char** argv) {
  using namespace zkd;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string item; std::getline(ss, item, ',');) only.insert(std::stoi(item));
    } else {
      std::fprintf(stderr, "usage: %s [--only N[,N...]]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "linear group unitarity", 10, Unitarity},
      {2, "group law and projector commutation", 10, GroupLaw},
      {3, "conservation at mu = 0", 120, Conservation},
      {4, "regularized L2 identity", 120, RegularizedIdentity},
      {5, "integrator validity", 300, IntegratorValidity},
      {6, "Strichartz decay exponents", 2700,
       [] {
         Outcome all{true, ""};
         for (int a : {1, 2, 3}) {
           const auto t0 = Clock::now();
           auto o = Strichartz(a);
           const double s = std::chrono::duration<double>(Clock::now() - t0).count();
           o.pass = o.pass && s < 900;
           all.pass = all.pass && o.pass;
           all.detail += (all.detail.empty() ? "" : " | ") + o.detail + Fmt(" [%.0fs]", s);
         }
         return all;
       }},
      {7, "kernel decay", 900, Kernel},
      {8, "Weyl sums and Dirichlet approximation", 300, Weyl},
      {9, "oscillatory integral bound", 120, Oscillatory},
      {10, "commutator estimate", 120, Commutator},
      {11, "oracle equivalences", 60, Oracles},
  };
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  criterion %2d  %-40s %s; %.1fs (budget %.0fs)%s\n", pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
