#include "experiments.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commutator_scan.hpp"
#include "diagnostics.hpp"
#include "field_io.hpp"
#include "initial_data.hpp"
#include "lab/kernel.hpp"
#include "lab/oscillatory.hpp"
#include "lab/strichartz.hpp"
#include "lab/weyl.hpp"
#include "parallel.hpp"
#include "solver.hpp"
#include "spectral_ops.hpp"

namespace zkd {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no NaN / inf; those become null.
Json JNum(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(f), ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  f << text;
  f.flush();
  Require(static_cast<bool>(f), ErrorCode::kIo, "failed writing '" + path.string() + "'");
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { Line(header); }
  Csv& Row(const std::vector<std::string>& cells) {
    Line(cells);
    return *this;
  }
  void Save(const fs::path& path) const { WriteText(path, out_.str()); }

 private:
  void Line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  std::ostringstream out_;
};

std::string Int(std::int64_t v) { return std::to_string(v); }

int Workers(const Config& c) {
  const auto w = c.Int("workers");
  return w == 0 ? DefaultWorkers() : static_cast<int>(w);
}

std::uint64_t Seed(const Config& c) { return static_cast<std::uint64_t>(c.Int("seed")); }

DispersionSymbol Symbol(const Config& c) {
  DispersionSymbol s;
  s.alpha = static_cast<int>(c.Int("equation.alpha"));
  s.beta = c.Double("equation.beta");
  s.sign = c.Str("equation.sign") == "+" ? DispersionSign::kPlus : DispersionSign::kMinus;
  if (c.Has("equation.mu")) s.mu = c.Double("equation.mu");
  return s;
}

Grid GridOf(const Config& c) {
  return Grid(static_cast<int>(c.Int("grid.nx")), static_cast<int>(c.Int("grid.ny")));
}

SimulationConfig SimConfig(const Config& c) {
  SimulationConfig s;
  s.symbol = Symbol(c);
  s.grid = GridOf(c);
  s.dt = c.Double("solver.dt");
  s.t_end = c.Double("solver.t_end");
  s.integrator = c.Str("solver.integrator") == "ifrk4" ? Integrator::kIfrk4 : Integrator::kEtdrk4;
  s.dealias = c.Bool("solver.dealias");
  if (c.Has("solver.record_every")) s.record_every = static_cast<int>(c.Int("solver.record_every"));
  s.seed = Seed(c);
  if (c.Has("diagnostics.sobolev_s")) s.sobolev_s = c.DoubleList("diagnostics.sobolev_s");
  return s;
}

ProfileSpec ProfileFrom(const Config& c) {
  ProfileSpec p;
  p.profile = ParseProfile(c.Str("initial.profile"));
  p.amplitude = c.Double("initial.amplitude");
  p.m = static_cast<int>(c.Int("initial.m"));
  p.n = static_cast<int>(c.Int("initial.n"));
  p.width = c.Double("initial.width");
  p.band = static_cast<int>(c.Int("initial.band"));
  p.path = c.Str("initial.path");
  p.seed = Seed(c);
  return p;
}

Json ConfigJson(const Config& c) {
  Json j = Json::object();
  // workers never changes results, so it stays out of the reports
  for (const auto& v : c.values()) {
    if (v.key != "workers") j[v.key] = v.value;
  }
  return j;
}

Json Header(const Config& c) {
  Json j;
  j["command"] = CommandName(c.command());
  j["seed"] = Seed(c);
  j["preset"] = c.Str("preset");
  j["config"] = ConfigJson(c);
  return j;
}

void SaveSummary(const fs::path& dir, const Json& j) { WriteText(dir / "summary.json", j.dump(2) + "\n"); }

std::string SName(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "h%g", s);
  return buf;
}

void SaveDiagnostics(const fs::path& path, const Trajectory& traj,
                     const std::vector<double>& sobolev_s) {
  std::vector<std::string> header{"t", "mass", "energy"};
  for (double s : sobolev_s) header.push_back(SName(s));
  for (const char* h : {"sup_u", "sup_ux", "sup_uy", "g_accum", "laplacian_sq", "dissipation_accum"}) {
    header.emplace_back(h);
  }
  Csv csv(header);
  for (const auto& r : traj.diagnostics) {
    std::vector<std::string> row{Num(r.t), Num(r.mass), Num(r.energy)};
    for (const auto& [s, v] : r.h_s_norms) row.push_back(Num(v));
    for (double v : {r.sup_u, r.sup_ux, r.sup_uy, r.g_accum, r.laplacian_sq, r.dissipation_accum}) {
      row.push_back(Num(v));
    }
    csv.Row(row);
  }
  csv.Save(path);
}

double RelDrift(double v, double v0) {
  const double d = std::abs(v - v0);
  return d == 0.0 ? 0.0 : d / std::max(std::abs(v0), 1e-300);
}

Json TrajectoryJson(const Trajectory& traj) {
  Json j;
  const auto& d = traj.diagnostics;
  j["steps"] = traj.steps;
  j["dt_used"] = traj.dt_used;
  j["t_final"] = d.back().t;
  double mass_drift = 0.0, energy_drift = 0.0;
  for (const auto& r : d) {
    mass_drift = std::max(mass_drift, RelDrift(r.mass, d.front().mass));
    energy_drift = std::max(energy_drift, RelDrift(r.energy, d.front().energy));
  }
  j["mass_initial"] = d.front().mass;
  j["mass_final"] = d.back().mass;
  j["mass_max_relative_drift"] = mass_drift;
  j["energy_initial"] = d.front().energy;
  j["energy_final"] = d.back().energy;
  j["energy_max_relative_drift"] = energy_drift;
  j["g_final"] = d.back().g_accum;
  j["dissipation_final"] = d.back().dissipation_accum;
  j["warnings"] = traj.warnings;
  return j;
}

void RunSimulate(const Config& c, const fs::path& dir) {
  const SimulationConfig sim = SimConfig(c);
  const SpectralField phi = MakeInitialData(sim.grid, ProfileFrom(c));
  const Trajectory traj = Simulate(sim, phi);
  SaveDiagnostics(dir / "diagnostics.csv", traj, sim.sobolev_s);

  Json j = Header(c);
  j["result"] = TrajectoryJson(traj);
  if (sim.symbol.mu == 0.0 && traj.states.size() >= 4) {
    const double s1 = c.Str("diagnostics.l1t_s1") == "auto"
                          ? 0.5 - std::exp2(-(sim.symbol.alpha + 2)) + 0.1
                          : c.Double("diagnostics.l1t_s1");
    const double s2 = c.Str("diagnostics.l1t_s2") == "auto" ? 0.5 - sim.symbol.beta / 4 + 0.1
                                                            : c.Double("diagnostics.l1t_s2");
    const auto r = L1tLinfEstimateCheck(traj.times, traj.states, sim.symbol, s1, s2);
    j["l1t_linf"] = {{"s1", s1},          {"s2", s2},       {"lhs", r.lhs},
                     {"rhs", r.rhs},      {"ratio", r.ratio}, {"horizon", r.horizon},
                     {"sup_term", r.sup_term}, {"forcing_term", r.forcing_term}};
  }
  if (c.Bool("output.snapshots")) {
    const bool json = c.Str("output.snapshot_format") == "json";
    const fs::path snap = dir / "snapshots";
    std::error_code ec;
    fs::create_directories(snap, ec);
    Require(!ec, ErrorCode::kIo, "cannot create '" + snap.string() + "': " + ec.message());
    Csv index({"index", "t", "file"});
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "state_%05zu.%s", i, json ? "json" : "zkdf");
      SaveField((snap / name).string(), traj.states[i],
                json ? FieldFormat::kJson : FieldFormat::kBinary);
      index.Row({Int(static_cast<std::int64_t>(i)), Num(traj.times[i]), std::string("snapshots/") + name});
    }
    index.Save(dir / "snapshots.csv");
  }
  SaveSummary(dir, j);
}

void RunFamily(const Config& c, const fs::path& dir) {
  const SimulationConfig sim = SimConfig(c);
  const SpectralField phi = MakeInitialData(sim.grid, ProfileFrom(c));
  const auto mu_list = c.DoubleList("regularized.mu_list");
  const auto fam = SolveRegularizedFamily(sim, phi, mu_list, Workers(c));
  Csv csv({"mu", "l2_distance", "identity_residual", "mass_final", "dissipation_final"});
  Json members = Json::array();
  bool monotone = true;
  double max_residual = 0.0;
  for (std::size_t i = 0; i < fam.members.size(); ++i) {
    const auto& m = fam.members[i];
    const auto& last = m.trajectory.diagnostics.back();
    csv.Row({Num(m.mu), Num(m.l2_distance), Num(m.identity_residual), Num(last.mass),
             Num(last.dissipation_accum)});
    members.push_back({{"mu", m.mu},
                       {"l2_distance", m.l2_distance},
                       {"identity_residual", m.identity_residual},
                       {"warnings", m.trajectory.warnings}});
    if (i > 0 && m.l2_distance > fam.members[i - 1].l2_distance) monotone = false;
    max_residual = std::max(max_residual, m.identity_residual);
  }
  csv.Save(dir / "family.csv");
  SaveDiagnostics(dir / "reference_diagnostics.csv", fam.reference, sim.sobolev_s);
  Json j = Header(c);
  j["result"] = {{"members", members},
                 {"max_identity_residual", max_residual},
                 {"l2_distance_nonincreasing", monotone},
                 {"reference", TrajectoryJson(fam.reference)}};
  SaveSummary(dir, j);
}

SpectralField FinalState(SimulationConfig sim, const SpectralField& phi) {
  sim.record_every = 1 << 30;
  return Simulate(sim, phi).states.back();
}

void RunConvergence(const Config& c, const fs::path& dir) {
  SimulationConfig sim = SimConfig(c);
  const ProfileSpec profile = ProfileFrom(c);
  Json j = Header(c);
  const std::string mode = c.Str("convergence.mode");
  if (mode == "temporal") {
    const auto dts = c.DoubleList("convergence.dt_list");
    Require(dts.size() >= 3, ErrorCode::kInsufficientData,
            "convergence.dt_list needs at least 3 step sizes");
    for (std::size_t i = 1; i < dts.size(); ++i) {
      Require(dts[i] > 0 && dts[i] < dts[i - 1], ErrorCode::kValidation,
              "convergence.dt_list must be positive and strictly decreasing");
    }
    const SpectralField phi = MakeInitialData(sim.grid, profile);
    std::vector<SpectralField> finals(dts.size(), SpectralField(sim.grid));
    ParallelFor(dts.size(), Workers(c), [&](std::size_t i) {
      SimulationConfig s = sim;
      s.dt = dts[i];
      finals[i] = FinalState(s, phi);
    });
    // successive differences; order from consecutive ratios
    Csv csv({"dt", "difference_to_next", "order"});
    Json rows = Json::array();
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
      diffs.push_back(L2Norm(finals[i] - finals[i + 1]));
    }
    double min_tail_order = INFINITY;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      const double order =
          i == 0 ? NAN : std::log(diffs[i - 1] / diffs[i]) / std::log(dts[i - 1] / dts[i]);
      csv.Row({Num(dts[i]), Num(diffs[i]), Num(order)});
      rows.push_back({{"dt", dts[i]}, {"difference_to_next", diffs[i]}, {"order", JNum(order)}});
      if (i + 2 >= diffs.size() && i > 0) min_tail_order = std::min(min_tail_order, order);
    }
    csv.Save(dir / "temporal.csv");
    SimulationConfig other = sim;
    other.dt = dts.back();
    other.integrator =
        sim.integrator == Integrator::kEtdrk4 ? Integrator::kIfrk4 : Integrator::kEtdrk4;
    const double agreement = L2Norm(FinalState(other, phi) - finals.back());
    j["result"] = {{"mode", mode},
                   {"rows", rows},
                   {"min_order_last_two", JNum(min_tail_order)},
                   {"integrator_agreement_l2", agreement},
                   {"integrator_agreement_dt", dts.back()}};
  } else {
    const auto ns = c.DoubleList("convergence.n_list");
    Require(ns.size() >= 2, ErrorCode::kInsufficientData,
            "convergence.n_list needs at least 2 resolutions");
    std::vector<double> errors(ns.size());
    ParallelFor(ns.size(), Workers(c), [&](std::size_t i) {
      const double nd = ns[i];
      Require(nd == std::floor(nd) && nd >= 8 && nd <= 2048, ErrorCode::kValidation,
              "convergence.n_list entries must be integers in [8, 2048]");
      const int n = static_cast<int>(nd);
      SimulationConfig coarse = sim, fine = sim;
      coarse.grid = Grid(n, n);
      fine.grid = Grid(2 * n, 2 * n);
      const auto uc = FinalState(coarse, MakeInitialData(coarse.grid, profile));
      const auto uf = FinalState(fine, MakeInitialData(fine.grid, profile));
      errors[i] = L2Norm(Resample(uc, fine.grid) - uf);
    });
    Csv csv({"n", "error_vs_2n", "decades_drop"});
    Json rows = Json::array();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double drop = i == 0 ? NAN : std::log10(errors[i - 1] / errors[i]);
      csv.Row({Num(ns[i]), Num(errors[i]), Num(drop)});
      rows.push_back({{"n", ns[i]}, {"error_vs_2n", errors[i]}, {"decades_drop", JNum(drop)}});
    }
    csv.Save(dir / "spatial.csv");
    j["result"] = {{"mode", mode}, {"rows", rows}};
  }
  SaveSummary(dir, j);
}

Json FitJson(const lab::ScanReport& r) {
  return {{"slope_j", JNum(r.fit.slope_j)},
          {"slope_k", JNum(r.fit.slope_k)},
          {"intercept", JNum(r.fit.intercept)},
          {"max_residual", JNum(r.fit.max_residual)},
          {"min_residual", JNum(r.fit.min_residual)},
          {"expected_slope_j", r.expected_slope_j},
          {"expected_slope_k", r.expected_slope_k},
          {"uniform_constant", r.uniform_constant},
          {"min_ratio", r.min_ratio},
          {"epsilon", r.epsilon},
          {"seed", r.seed},
          {"cells", r.cells.size()}};
}

void SaveCells(const fs::path& path, const lab::ScanReport& r) {
  Csv csv({"j", "k", "measured", "bound", "ratio", "samples"});
  for (const auto& cell : r.cells) {
    csv.Row({Int(cell.j), Int(cell.k), Num(cell.measured), Num(cell.bound), Num(cell.ratio),
             Int(cell.samples)});
  }
  csv.Save(path);
}

void RunStrichartz(const Config& c, const fs::path& dir) {
  lab::StrichartzScanConfig s;
  s.symbol = Symbol(c);
  s.j_min = static_cast<int>(c.Int("scan.j_min"));
  s.j_max = static_cast<int>(c.Int("scan.j_max"));
  s.k_min = static_cast<int>(c.Int("scan.k_min"));
  s.k_max = static_cast<int>(c.Int("scan.k_max"));
  s.trials = static_cast<int>(c.Int("scan.trials"));
  s.time_samples = static_cast<int>(c.Int("scan.time_samples"));
  s.refinement = static_cast<int>(c.Int("scan.refinement"));
  s.epsilon = c.Double("scan.epsilon");
  s.seed = Seed(c);
  s.workers = Workers(c);
  const auto r = lab::StrichartzScan(s);
  SaveCells(dir / "cells.csv", r);
  Json j = Header(c);
  j["result"] = FitJson(r);
  SaveSummary(dir, j);
}

void RunKernel(const Config& c, const fs::path& dir) {
  lab::KernelScanConfig s;
  s.symbol = Symbol(c);
  s.j_min = static_cast<int>(c.Int("scan.j_min"));
  s.j_max = static_cast<int>(c.Int("scan.j_max"));
  s.k_min = static_cast<int>(c.Int("scan.k_min"));
  s.k_max = static_cast<int>(c.Int("scan.k_max"));
  s.samples_per_cell = static_cast<int>(c.Int("scan.samples_per_cell"));
  s.epsilon = c.Double("scan.epsilon");
  s.mode = c.Str("scan.mode") == "counting" ? lab::KernelScanMode::kCounting
                                            : lab::KernelScanMode::kDecay;
  s.l_rule = c.Str("scan.l_rule") == "proof-window" ? lab::KernelLRule::kProofWindow
                                                    : lab::KernelLRule::kAdmissible;
  s.l_span = static_cast<int>(c.Int("scan.l_span"));
  s.seed = Seed(c);
  s.workers = Workers(c);
  const auto r = lab::KernelDecayScan(s);
  SaveCells(dir / "cells.csv", r);
  Json j = Header(c);
  j["result"] = FitJson(r);
  j["result"]["mode"] = c.Str("scan.mode");
  SaveSummary(dir, j);
}

void RunWeyl(const Config& c, const fs::path& dir) {
  lab::WeylScanConfig s;
  s.degree = static_cast<int>(c.Int("weyl.degree"));
  s.n_min = c.Int("weyl.n_min");
  s.n_max = c.Int("weyl.n_max");
  s.trials = static_cast<int>(c.Int("weyl.trials"));
  s.delta = c.Double("weyl.delta");
  const std::string rule = c.Str("weyl.lambda_rule");
  s.rule = rule == "dyadic"    ? lab::LambdaRule::kDyadic
           : rule == "power-n" ? lab::LambdaRule::kPowerN
                               : lab::LambdaRule::kFixed;
  s.fixed_lambda = c.Int("weyl.lambda");
  s.leading_grid = static_cast<int>(c.Int("weyl.leading_grid"));
  s.seed = Seed(c);
  s.workers = Workers(c);
  const auto r = lab::WeylScan(s);
  Csv csv({"trial", "n", "leading", "lambda", "a", "q", "dirichlet_error", "abs_sum", "bound",
           "ratio"});
  for (const auto& row : r.rows) {
    csv.Row({Int(row.trial), Int(row.n), Num(row.leading), Int(row.lambda), Int(row.approx.a),
             Int(row.approx.q), Num(row.dirichlet_error), Num(row.abs_sum), Num(row.bound),
             Num(row.ratio)});
  }
  csv.Save(dir / "rows.csv");
  Json octaves = Json::object();
  for (const auto& [o, v] : r.max_ratio_by_octave) octaves[std::to_string(o)] = v;
  Json j = Header(c);
  j["result"] = {{"trials", r.rows.size()},
                 {"max_ratio", r.max_ratio},
                 {"max_dirichlet_error", r.max_dirichlet_error},
                 {"dirichlet_always_within_bound", r.max_dirichlet_error <= 1.0},
                 {"trivial_bound_ok", r.trivial_bound_ok},
                 {"max_ratio_by_octave", octaves},
                 {"seed", r.seed}};
  SaveSummary(dir, j);
}

void RunVdc(const Config& c, const fs::path& dir) {
  const auto vdc = lab::VanDerCorputScan(static_cast<int>(c.Int("vdc.i_min")),
                                         static_cast<int>(c.Int("vdc.i_max")));
  Csv vcsv({"t", "lhs", "rhs", "rhs_printed", "scaled_lhs", "panels"});
  double max_scaled = 0.0, min_scaled = INFINITY;
  bool lhs_le_rhs = true;
  for (const auto& row : vdc) {
    vcsv.Row({Num(row.t), Num(row.result.lhs), Num(row.result.rhs), Num(row.result.rhs_printed),
              Num(row.scaled_lhs), Int(row.result.panels)});
    max_scaled = std::max(max_scaled, row.scaled_lhs);
    min_scaled = std::min(min_scaled, row.scaled_lhs);
    lhs_le_rhs = lhs_le_rhs && row.result.lhs <= row.result.rhs;
  }
  vcsv.Save(dir / "vdc.csv");

  const auto draws = lab::OscillatoryScan(static_cast<int>(c.Int("vdc.draws")), Seed(c),
                                          Workers(c), static_cast<int>(c.Int("vdc.quadrature_n")));
  Csv ocsv({"draw", "j", "k", "l", "y_shift", "t", "m", "beta", "sign", "re", "im", "abs",
            "bound", "ratio", "converged", "last_change", "nodes"});
  double max_ratio = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const auto& d = draws[i];
    const double bound = d.result.bound.value_or(NAN);
    ocsv.Row({Int(static_cast<std::int64_t>(i)), Int(d.j), Int(d.k), Int(d.l),
              Num(d.params.y_shift), Num(d.params.t), Num(d.params.m), Num(d.params.beta),
              d.params.sign == DispersionSign::kPlus ? "+" : "-", Num(d.result.value.real()),
              Num(d.result.value.imag()), Num(std::abs(d.result.value)), Num(bound),
              Num(d.ratio), d.result.converged ? "1" : "0", Num(d.result.last_change),
              Int(d.result.nodes)});
    max_ratio = std::max(max_ratio, d.ratio);
    converged = converged && d.result.converged;
  }
  ocsv.Save(dir / "oscillatory.csv");
  Json j = Header(c);
  j["result"] = {{"vdc_points", vdc.size()},
                 {"vdc_max_scaled_lhs", JNum(max_scaled)},
                 {"vdc_min_scaled_lhs", JNum(min_scaled)},
                 {"vdc_lhs_le_rhs", lhs_le_rhs},
                 {"oscillatory_draws", draws.size()},
                 {"oscillatory_max_ratio", max_ratio},
                 {"oscillatory_all_converged", converged}};
  SaveSummary(dir, j);
}

void RunCommutator(const Config& c, const fs::path& dir) {
  CommutatorScanConfig s;
  s.grid = GridOf(c);
  s.band = static_cast<int>(c.Int("commutator.band"));
  s.pairs = static_cast<int>(c.Int("commutator.pairs"));
  s.s_list = c.DoubleList("commutator.s_list");
  s.seed = Seed(c);
  s.workers = Workers(c);
  const auto r = CommutatorScan(s);
  Csv csv({"pair", "s", "lhs", "rhs", "ratio"});
  for (const auto& row : r.rows) {
    csv.Row({Int(row.pair), Num(row.s), Num(row.result.lhs), Num(row.result.rhs), Num(row.ratio)});
  }
  csv.Save(dir / "rows.csv");
  Json by_s = Json::array();
  for (std::size_t i = 0; i < s.s_list.size(); ++i) {
    by_s.push_back({{"s", s.s_list[i]}, {"max_ratio", r.max_ratio_by_s[i]}});
  }
  Json j = Header(c);
  j["result"] = {{"pairs", s.pairs},
                 {"max_ratio", r.max_ratio},
                 {"max_ratio_by_s", by_s},
                 {"constant_f_lhs", r.constant_f_lhs},
                 {"seed", r.seed}};
  SaveSummary(dir, j);
}

std::string ReadFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  Require(static_cast<bool>(f), ErrorCode::kIo, "cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

void RunExperiment(const Config& config, const std::string& out_dir) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  Require(!ec, ErrorCode::kIo, "cannot create output directory '" + out_dir + "': " + ec.message());
  WriteText(dir / "config.resolved", config.Echo());
  switch (config.command()) {
    case Command::kSimulate: return RunSimulate(config, dir);
    case Command::kRegularizedFamily: return RunFamily(config, dir);
    case Command::kStrichartzScan: return RunStrichartz(config, dir);
    case Command::kWeylScan: return RunWeyl(config, dir);
    case Command::kKernelScan: return RunKernel(config, dir);
    case Command::kVdcScan: return RunVdc(config, dir);
    case Command::kConvergence: return RunConvergence(config, dir);
    case Command::kCommutatorScan: return RunCommutator(config, dir);
  }
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return 0;
    case ErrorCode::kInternal: return 1;
    case ErrorCode::kParse:
    case ErrorCode::kInvalidArgument: return 2;
    case ErrorCode::kValidation:
    case ErrorCode::kDomain: return 3;
    case ErrorCode::kIo: return 4;
    case ErrorCode::kDivergence: return 5;
    case ErrorCode::kInvalidInitialData: return 6;
    case ErrorCode::kInsufficientData: return 7;
    case ErrorCode::kSymmetryViolation:
    case ErrorCode::kBackwardHeat:
    case ErrorCode::kCertificateViolation:
    case ErrorCode::kBoundUndefined: return 8;
  }
  return 1;
}

RunStatus RunRequestChecked(const RunRequest& request) noexcept {
  RunStatus status;
  try {
    const std::string text = request.config_path.empty() ? "" : ReadFile(request.config_path);
    const Config config =
        Config::Resolve(request.command, text, request.config_path, request.overrides);
    RunExperiment(config, request.out_dir);
    return status;
  } catch (const Error& e) {
    status.code = e.code();
    status.message = e.what();
  } catch (const std::exception& e) {
    status.code = ErrorCode::kInternal;
    status.message = e.what();
  } catch (...) {
    status.code = ErrorCode::kInternal;
    status.message = "unknown failure";
  }
  status.exit_code = ExitCodeFor(status.code);
  try {
    Json j;
    j["status"] = "error";
    j["code"] = std::string(ErrorCodeName(status.code));
    j["exit_code"] = status.exit_code;
    j["message"] = status.message;
    const fs::path dir(request.out_dir);
    std::error_code ec;
    if (!request.out_dir.empty() && (fs::is_directory(dir, ec) || fs::create_directories(dir, ec))) {
      std::ofstream f(dir / "error.json", std::ios::trunc);
      if (f) f << j.dump(2) << "\n";
    }
  } catch (...) {
    // the caller still has the message
  }
  return status;
}

}  // namespace zkd
