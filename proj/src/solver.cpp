#include "solver.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "spectral_ops.hpp"

namespace zkd {
namespace {

constexpr int kContourPoints = 32;
constexpr double kContourSwitch = 0.5;
constexpr double kMeanZeroTolerance = 1e-12;
constexpr double kCflLimit = 0.5;

struct EtdCoefficients {
  Complex q, f1, f2, f3;
};

EtdCoefficients EtdDirect(Complex z, double h) {
  const Complex ez = std::exp(z);
  const Complex z3 = z * z * z;
  return {h * (std::exp(0.5 * z) - 1.0) / z,
          h * (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3,
          h * (2.0 + z + ez * (z - 2.0)) / z3,
          h * (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3};
}

// Contour average on the unit circle around z; the phi functions are entire,
// so the trapezoid rule on the circle converges geometrically.
EtdCoefficients EtdContour(Complex z, double h) {
  EtdCoefficients sum{};
  for (int k = 0; k < kContourPoints; ++k) {
    const double theta = kTwoPi * (k + 0.5) / kContourPoints;
    const EtdCoefficients c = EtdDirect(z + std::polar(1.0, theta), h);
    sum.q += c.q;
    sum.f1 += c.f1;
    sum.f2 += c.f2;
    sum.f3 += c.f3;
  }
  const double inv = 1.0 / kContourPoints;
  return {sum.q * inv, sum.f1 * inv, sum.f2 * inv, sum.f3 * inv};
}

bool AllFinite(const SpectralField& u) {
  for (const Complex& c : u.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

// out = a .* x (+ b .* y ...), coefficient-wise.
SpectralField Scale(const std::vector<Complex>& a, const SpectralField& x) {
  SpectralField out = x;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= a[i];
  return out;
}

void AddScaled(SpectralField& out, const std::vector<Complex>& a, const SpectralField& x) {
  auto o = out.coeffs();
  auto v = x.coeffs();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += a[i] * v[i];
}

void AddScaled(SpectralField& out, Complex a, const SpectralField& x) {
  auto o = out.coeffs();
  auto v = x.coeffs();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += a * v[i];
}

}  // namespace

void SimulationConfig::Validate() const {
  symbol.Validate();
  Require(std::isfinite(t_end) && t_end > 0.0, ErrorCode::kValidation,
          "solver.t_end must be positive");
  Require(std::isfinite(dt) && dt > 0.0, ErrorCode::kValidation, "solver.dt must be positive");
  Require(record_every >= 1, ErrorCode::kValidation, "solver.record_every must be >= 1");
}

SpectralField NonlinearTerm(const SpectralField& u, bool dealias) {
  const Grid& grid = u.grid();
  std::vector<double> values = InverseTransformUnchecked(u);
  for (double& v : values) v *= v;
  SpectralField out = ForwardTransform(grid, values);
  out.ForEach([&](int m, int n, Complex& c) {
    if (grid.IsNyquistX(m) || (dealias && !InDealiasedBand(grid, m, n))) {
      c = 0.0;
    } else {
      c *= Complex(0.0, -0.5 * m);
    }
  });
  return out;
}

Stepper::Stepper(const Grid& grid, const DispersionSymbol& symbol, double dt,
                 Integrator integrator, StepOptions options)
    : grid_(grid), symbol_(symbol), dt_(dt), integrator_(integrator), options_(options) {
  symbol_.Validate();
  Require(std::isfinite(dt) && dt > 0.0, ErrorCode::kInvalidArgument, "dt must be positive");
  const std::size_t size = grid.size();
  e_.resize(size);
  e2_.resize(size);
  if (integrator == Integrator::kEtdrk4) {
    q_.resize(size);
    f1_.resize(size);
    f2_.resize(size);
    f3_.resize(size);
  }
  for (int i = 0; i < grid.nx(); ++i) {
    const int m = grid.WavenumberX(i);
    for (int j = 0; j < grid.ny(); ++j) {
      const int n = grid.WavenumberY(j);
      const std::size_t idx = static_cast<std::size_t>(i) * grid.ny() + j;
      e_[idx] = LinearFactor(grid, m, n, dt, symbol_);
      e2_[idx] = LinearFactor(grid, m, n, 0.5 * dt, symbol_);
      if (integrator != Integrator::kEtdrk4) continue;
      const double omega = grid.IsNyquistX(m) ? 0.0 : DispersionRelation(m, n, symbol_);
      const Complex z = dt * Complex(-Damping(m, n, symbol_), omega);
      const EtdCoefficients c =
          std::abs(z) < kContourSwitch ? EtdContour(z, dt) : EtdDirect(z, dt);
      q_[idx] = c.q;
      f1_[idx] = c.f1;
      f2_[idx] = c.f2;
      f3_[idx] = c.f3;
    }
  }
}

SpectralField Stepper::N(const SpectralField& u) const {
  if (!options_.nonlinear) return SpectralField(u.grid());
  return NonlinearTerm(u, options_.dealias);
}

SpectralField Stepper::StepEtdrk4(const SpectralField& v) const {
  const SpectralField nv = N(v);
  SpectralField a = Scale(e2_, v);
  AddScaled(a, q_, nv);
  const SpectralField na = N(a);
  SpectralField b = Scale(e2_, v);
  AddScaled(b, q_, na);
  const SpectralField nb = N(b);
  SpectralField c = Scale(e2_, a);
  SpectralField mix = 2.0 * nb;
  mix -= nv;
  AddScaled(c, q_, mix);
  const SpectralField nc = N(c);

  SpectralField out = Scale(e_, v);
  AddScaled(out, f1_, nv);
  SpectralField nab = na + nb;
  nab *= 2.0;
  AddScaled(out, f2_, nab);
  AddScaled(out, f3_, nc);
  return out;
}

SpectralField Stepper::StepIfrk4(const SpectralField& u) const {
  const double h = dt_;
  const SpectralField k1 = N(u);
  SpectralField stage = u;
  AddScaled(stage, 0.5 * h, k1);
  const SpectralField k2 = N(Scale(e2_, stage));
  SpectralField eu2 = Scale(e2_, u);
  stage = eu2;
  AddScaled(stage, 0.5 * h, k2);
  const SpectralField k3 = N(stage);
  stage = Scale(e_, u);
  AddScaled(stage, h, Scale(e2_, k3));
  const SpectralField k4 = N(stage);

  SpectralField out = Scale(e_, u);
  AddScaled(out, h / 6.0, Scale(e_, k1));
  AddScaled(out, h / 3.0, Scale(e2_, k2 + k3));
  AddScaled(out, h / 6.0, k4);
  return out;
}

SpectralField Stepper::Step(const SpectralField& u, long step_index) const {
  Require(u.grid() == grid_, ErrorCode::kInvalidArgument, "state grid does not match stepper");
  SpectralField out =
      integrator_ == Integrator::kEtdrk4 ? StepEtdrk4(u) : StepIfrk4(u);
  if (!AllFinite(out)) {
    Fail(ErrorCode::kDivergence,
         "non-finite state at step " + std::to_string(step_index));
  }
  return out;
}

SpectralField StepEtdrk4(const SpectralField& u, double dt, const DispersionSymbol& symbol,
                         StepOptions options) {
  return Stepper(u.grid(), symbol, dt, Integrator::kEtdrk4, options).Step(u);
}

SpectralField StepIfrk4(const SpectralField& u, double dt, const DispersionSymbol& symbol,
                        StepOptions options) {
  return Stepper(u.grid(), symbol, dt, Integrator::kIfrk4, options).Step(u);
}

Trajectory Simulate(const SimulationConfig& config, const SpectralField& phi) {
  config.Validate();
  Require(phi.grid() == config.grid, ErrorCode::kInvalidArgument,
          "initial data grid does not match the configured grid");
  Require(AllFinite(phi), ErrorCode::kInvalidInitialData, "initial data is not finite");
  const double violation = MeanZeroXViolation(phi);
  if (violation > kMeanZeroTolerance) {
    std::ostringstream msg;
    msg << "initial data must have zero mean in x for every y (relative m = 0 content "
        << violation << " > " << kMeanZeroTolerance << ")";
    Fail(ErrorCode::kInvalidInitialData, msg.str());
  }
  const double defect = phi.HermitianDefect();
  if (defect > 1e-12) {
    Fail(ErrorCode::kInvalidInitialData,
         "initial data is not real-valued (Hermitian defect " + std::to_string(defect) + ")");
  }

  const long steps =
      config.dt >= config.t_end
          ? 1
          : std::max(1L, static_cast<long>(std::ceil(config.t_end / config.dt - 1e-9)));
  const double h = config.t_end / static_cast<double>(steps);
  const Stepper stepper(config.grid, config.symbol, h, config.integrator,
                        StepOptions{config.nonlinear, config.dealias});
  const int max_m = config.dealias ? config.grid.nx() / 3 : config.grid.nx() / 2;

  Trajectory traj;
  traj.dt_used = h;
  traj.steps = steps;
  DiagnosticsAccumulator diag(config.symbol, config.sobolev_s);

  SpectralField u = ProjectMeanZeroX(phi);
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  bool cfl_warned = false;
  const DiagnosticsRecord* rec = &diag.Push(0.0, u);

  for (long step = 1; step <= steps; ++step) {
    if (!cfl_warned && config.nonlinear && h * rec->sup_u * max_m > kCflLimit) {
      std::ostringstream msg;
      msg << "nonlinear CFL number dt*max|u|*max|m| = " << h * rec->sup_u * max_m
          << " exceeds " << kCflLimit << " at t = " << rec->t;
      traj.warnings.push_back(msg.str());
      cfl_warned = true;
    }
    const double t = step == steps ? config.t_end : h * static_cast<double>(step);
    try {
      u = stepper.Step(u, step);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDivergence) throw;
      Fail(ErrorCode::kDivergence, std::string(e.what()) + " (t = " + std::to_string(t) + ")");
    }
    rec = &diag.Push(t, u);
    if (step % config.record_every == 0 || step == steps) {
      traj.times.push_back(t);
      traj.states.push_back(u);
    }
  }
  traj.diagnostics = diag.TakeRecords();
  return traj;
}

RegularizedFamily SolveRegularizedFamily(const SimulationConfig& config,
                                         const SpectralField& phi,
                                         const std::vector<double>& mu_list, int workers) {
  Require(!mu_list.empty(), ErrorCode::kInvalidArgument, "mu list is empty");
  for (std::size_t i = 0; i < mu_list.size(); ++i) {
    Require(mu_list[i] > 0.0 && std::isfinite(mu_list[i]), ErrorCode::kInvalidArgument,
            "every mu must be positive");
    Require(i == 0 || mu_list[i] < mu_list[i - 1], ErrorCode::kInvalidArgument,
            "mu list must be strictly decreasing");
  }

  std::vector<double> mus{0.0};
  mus.insert(mus.end(), mu_list.begin(), mu_list.end());
  std::vector<Trajectory> runs(mus.size());
  ParallelFor(mus.size(), workers, [&](std::size_t i) {
    SimulationConfig c = config;
    c.symbol.mu = mus[i];
    runs[i] = Simulate(c, phi);
  });

  RegularizedFamily family;
  family.reference = std::move(runs[0]);
  const SpectralField& ref_end = family.reference.states.back();
  const double mass0 = Mass(ProjectMeanZeroX(phi));
  for (std::size_t i = 1; i < mus.size(); ++i) {
    RegularizedMember member;
    member.mu = mus[i];
    member.trajectory = std::move(runs[i]);
    member.l2_distance = L2Norm(member.trajectory.states.back() - ref_end);
    const DiagnosticsRecord& last = member.trajectory.diagnostics.back();
    member.identity_residual =
        mass0 == 0.0 ? 0.0
                     : std::abs(mass0 - last.mass - last.dissipation_accum) / mass0;
    family.members.push_back(std::move(member));
  }
  return family;
}

}  // namespace zkd
