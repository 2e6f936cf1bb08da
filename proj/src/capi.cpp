#include <zkdisp/zkdisp.h>

#include <cstring>
#include <memory>
#include <string>

#include "config.hpp"
#include "diagnostics.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "field_io.hpp"
#include "initial_data.hpp"
#include "lab/weyl.hpp"
#include "propagator.hpp"
#include "solver.hpp"
#include "spectral_ops.hpp"

struct zkd_field {
  zkd::SpectralField value;
};

namespace {

thread_local std::string g_last_error;

zkd_status Ok() {
  g_last_error.clear();
  return ZKD_OK;
}

zkd_status Record(zkd::ErrorCode code, const std::string& message) {
  g_last_error = message;
  return static_cast<zkd_status>(code);
}

template <typename Fn>
zkd_status Guard(Fn&& fn) noexcept {
  try {
    fn();
    return Ok();
  } catch (const zkd::Error& e) {
    return Record(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return Record(zkd::ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return Record(zkd::ErrorCode::kInternal, e.what());
  } catch (...) {
    return Record(zkd::ErrorCode::kInternal, "unknown failure");
  }
}

void NotNull(const void* p, const char* what) {
  zkd::Require(p != nullptr, zkd::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

zkd::DispersionSymbol ToSymbol(const zkd_symbol* s) {
  NotNull(s, "symbol");
  zkd::Require(s->sign == 1 || s->sign == -1, zkd::ErrorCode::kInvalidArgument,
               "symbol sign must be +1 or -1");
  zkd::DispersionSymbol out;
  out.alpha = s->alpha;
  out.beta = s->beta;
  out.sign = s->sign == 1 ? zkd::DispersionSign::kPlus : zkd::DispersionSign::kMinus;
  out.mu = s->mu;
  out.Validate();
  return out;
}

zkd_field* Wrap(zkd::SpectralField f) { return new zkd_field{std::move(f)}; }

void CheckMode(const zkd::SpectralField& f, int m, int n) {
  zkd::Require(f.grid().ContainsX(m) && f.grid().ContainsY(n), zkd::ErrorCode::kInvalidArgument,
               "wavenumber (" + std::to_string(m) + ", " + std::to_string(n) +
                   ") is outside the grid");
}

}  // namespace

extern "C" {

const char* zkd_version(void) { return "1.0.0"; }

const char* zkd_last_error(void) { return g_last_error.c_str(); }

const char* zkd_status_name(zkd_status status) {
  if (status == ZKD_OK) return "ok";
  if (status < ZKD_OK || status > ZKD_ERR_INTERNAL) return "unknown";
  return zkd::ErrorCodeName(static_cast<zkd::ErrorCode>(status)).data();
}

int zkd_exit_code(zkd_status status) {
  if (status < ZKD_OK || status > ZKD_ERR_INTERNAL) return 1;
  return zkd::ExitCodeFor(static_cast<zkd::ErrorCode>(status));
}

zkd_symbol zkd_symbol_default(void) { return zkd_symbol{1, 1.0, 1, 0.0}; }

zkd_status zkd_field_create(int nx, int ny, zkd_field** out) {
  return Guard([&] {
    NotNull(out, "out");
    *out = Wrap(zkd::SpectralField(zkd::Grid(nx, ny)));
  });
}

zkd_status zkd_field_profile(int nx, int ny, const char* profile, double amplitude, int m,
                             int n, double width, int band, uint64_t seed, zkd_field** out) {
  return Guard([&] {
    NotNull(out, "out");
    NotNull(profile, "profile");
    zkd::ProfileSpec spec;
    spec.profile = zkd::ParseProfile(profile);
    zkd::Require(spec.profile != zkd::Profile::kFile, zkd::ErrorCode::kInvalidArgument,
                 "use zkd_field_load for file data");
    spec.amplitude = amplitude;
    spec.m = m;
    spec.n = n;
    spec.width = width;
    spec.band = band;
    spec.seed = seed;
    *out = Wrap(zkd::MakeInitialData(zkd::Grid(nx, ny), spec));
  });
}

zkd_status zkd_field_clone(const zkd_field* field, zkd_field** out) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    *out = Wrap(field->value);
  });
}

void zkd_field_destroy(zkd_field* field) { delete field; }

zkd_status zkd_field_shape(const zkd_field* field, int* nx, int* ny) {
  return Guard([&] {
    NotNull(field, "field");
    if (nx) *nx = field->value.grid().nx();
    if (ny) *ny = field->value.grid().ny();
  });
}

zkd_status zkd_field_get(const zkd_field* field, int m, int n, double* re, double* im) {
  return Guard([&] {
    NotNull(field, "field");
    CheckMode(field->value, m, n);
    const auto c = field->value.at(m, n);
    if (re) *re = c.real();
    if (im) *im = c.imag();
  });
}

zkd_status zkd_field_set(zkd_field* field, int m, int n, double re, double im) {
  return Guard([&] {
    NotNull(field, "field");
    CheckMode(field->value, m, n);
    field->value.at(m, n) = {re, im};
  });
}

zkd_status zkd_field_samples(const zkd_field* field, double* out, size_t count) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    zkd::Require(count == field->value.grid().size(), zkd::ErrorCode::kInvalidArgument,
                 "sample buffer must hold nx * ny doubles");
    const auto v = zkd::InverseTransform(field->value);
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

zkd_status zkd_propagate(const zkd_field* in, double t, const zkd_symbol* symbol,
                         zkd_field** out) {
  return Guard([&] {
    NotNull(in, "field");
    NotNull(out, "out");
    *out = Wrap(zkd::Propagate(in->value, t, ToSymbol(symbol)));
  });
}

zkd_status zkd_l2_norm(const zkd_field* field, double* out) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    *out = zkd::L2Norm(field->value);
  });
}

zkd_status zkd_sobolev_norm(const zkd_field* field, double s, double* out) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    *out = zkd::SobolevNorm(field->value, s);
  });
}

zkd_status zkd_mass(const zkd_field* field, double* out) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    *out = zkd::Mass(field->value);
  });
}

zkd_status zkd_energy(const zkd_field* field, const zkd_symbol* symbol, double* out) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(out, "out");
    *out = zkd::Energy(field->value, ToSymbol(symbol));
  });
}

zkd_status zkd_field_save(const zkd_field* field, const char* path, int format) {
  return Guard([&] {
    NotNull(field, "field");
    NotNull(path, "path");
    zkd::Require(format == ZKD_FORMAT_BINARY || format == ZKD_FORMAT_JSON,
                 zkd::ErrorCode::kInvalidArgument, "unknown field format");
    zkd::SaveField(path, field->value,
                   format == ZKD_FORMAT_JSON ? zkd::FieldFormat::kJson : zkd::FieldFormat::kBinary);
  });
}

zkd_status zkd_field_load(const char* path, zkd_field** out) {
  return Guard([&] {
    NotNull(path, "path");
    NotNull(out, "out");
    *out = Wrap(zkd::LoadField(path));
  });
}

zkd_status zkd_simulate(const zkd_simulation* params, const zkd_field* phi,
                        zkd_field** final_state, zkd_simulation_stats* stats) {
  return Guard([&] {
    NotNull(params, "params");
    NotNull(phi, "phi");
    NotNull(final_state, "final_state");
    zkd::SimulationConfig c;
    c.symbol = ToSymbol(&params->symbol);
    c.dt = params->dt;
    c.t_end = params->t_end;
    c.grid = phi->value.grid();
    zkd::Require(params->integrator == ZKD_ETDRK4 || params->integrator == ZKD_IFRK4,
                 zkd::ErrorCode::kInvalidArgument, "unknown integrator");
    c.integrator = params->integrator == ZKD_IFRK4 ? zkd::Integrator::kIfrk4
                                                   : zkd::Integrator::kEtdrk4;
    c.dealias = params->dealias != 0;
    c.record_every = 1 << 30;
    const auto traj = zkd::Simulate(c, phi->value);
    if (stats) {
      const auto& d = traj.diagnostics;
      *stats = {traj.steps,          traj.dt_used,          d.front().mass, d.back().mass,
                d.front().energy,    d.back().energy,       d.back().dissipation_accum};
    }
    *final_state = Wrap(traj.states.back());
  });
}

zkd_status zkd_weyl_sum(const double* coeffs, int degree, int64_t n, double* re, double* im) {
  return Guard([&] {
    NotNull(coeffs, "coeffs");
    zkd::Require(degree >= 0 && degree <= 16, zkd::ErrorCode::kInvalidArgument,
                 "degree must be in [0, 16]");
    zkd::lab::WeylInstance inst;
    inst.coeffs.assign(coeffs, coeffs + degree + 1);
    inst.n = n;
    const auto s = zkd::lab::WeylSum(inst);
    if (re) *re = s.real();
    if (im) *im = s.imag();
  });
}

zkd_status zkd_dirichlet_approx(double r, int64_t lambda, int64_t* a, int64_t* q) {
  return Guard([&] {
    const auto approx = zkd::lab::DirichletApprox(r, lambda);
    if (a) *a = approx.a;
    if (q) *q = approx.q;
  });
}

zkd_status zkd_weyl_bound(double n, double q, int degree, double delta, double* out) {
  return Guard([&] {
    NotNull(out, "out");
    zkd::Require(n > 0 && q > 0 && degree >= 1 && delta > 0, zkd::ErrorCode::kInvalidArgument,
                 "weyl bound needs positive arguments");
    *out = zkd::lab::WeylBound(n, q, degree, delta);
  });
}

zkd_status zkd_experiment_run(const char* command, const char* config_path, const char* out_dir,
                              const char* const* overrides, size_t override_count) {
  zkd::RunRequest request;
  const zkd_status pre = Guard([&] {
    NotNull(command, "command");
    NotNull(out_dir, "out_dir");
    zkd::Require(override_count == 0 || overrides != nullptr, zkd::ErrorCode::kInvalidArgument,
                 "overrides is NULL");
    request.command = zkd::ParseCommand(command);
    if (config_path) request.config_path = config_path;
    request.out_dir = out_dir;
    for (size_t i = 0; i < override_count; ++i) {
      NotNull(overrides[i], "override");
      request.overrides.emplace_back(overrides[i]);
    }
  });
  if (pre != ZKD_OK) return pre;
  const auto status = zkd::RunRequestChecked(request);
  if (status.code == zkd::ErrorCode::kOk) return Ok();
  return Record(status.code, status.message);
}

const char* zkd_command_names(void) {
  static const std::string names = [] {
    std::string s;
    for (const auto& n : zkd::CommandNames()) s += n + "\n";
    return s;
  }();
  return names.c_str();
}

const char* zkd_preset_names(const char* command) {
  thread_local std::string names;
  names.clear();
  if (command == nullptr) return names.c_str();
  try {
    for (const auto& n : zkd::PresetNames(zkd::ParseCommand(command))) names += n + "\n";
  } catch (...) {
    names.clear();
  }
  return names.c_str();
}

}  // extern "C"
