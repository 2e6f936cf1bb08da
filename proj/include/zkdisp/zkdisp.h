#ifndef ZKDISP_ZKDISP_H_
#define ZKDISP_ZKDISP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ZKDISP_BUILDING)
#define ZKD_API __attribute__((visibility("default")))
#else
#define ZKD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning zkd_status also records a message
   retrievable with zkd_last_error() on the calling thread. */
typedef enum zkd_status {
  ZKD_OK = 0,
  ZKD_ERR_INVALID_ARGUMENT = 1,
  ZKD_ERR_SYMMETRY_VIOLATION = 2,
  ZKD_ERR_BACKWARD_HEAT = 3,
  ZKD_ERR_DIVERGENCE = 4,
  ZKD_ERR_INVALID_INITIAL_DATA = 5,
  ZKD_ERR_INSUFFICIENT_DATA = 6,
  ZKD_ERR_CERTIFICATE_VIOLATION = 7,
  ZKD_ERR_BOUND_UNDEFINED = 8,
  ZKD_ERR_DOMAIN = 9,
  ZKD_ERR_PARSE = 10,
  ZKD_ERR_VALIDATION = 11,
  ZKD_ERR_IO = 12,
  ZKD_ERR_INTERNAL = 13
} zkd_status;

typedef enum zkd_sign { ZKD_SIGN_PLUS = 1, ZKD_SIGN_MINUS = -1 } zkd_sign;
typedef enum zkd_integrator { ZKD_ETDRK4 = 0, ZKD_IFRK4 = 1 } zkd_integrator;
typedef enum zkd_field_format { ZKD_FORMAT_BINARY = 0, ZKD_FORMAT_JSON = 1 } zkd_field_format;

/* omega(m, n) = m (|m|^{1+alpha} + sign |n|^{1+beta}), damping mu (m^2+n^2)^2. */
typedef struct zkd_symbol {
  int alpha;
  double beta;
  int sign;
  double mu;
} zkd_symbol;

typedef struct zkd_simulation {
  zkd_symbol symbol;
  double dt;
  double t_end;
  int integrator;
  int dealias;
} zkd_simulation;

typedef struct zkd_simulation_stats {
  long steps;
  double dt_used;
  double mass_initial;
  double mass_final;
  double energy_initial;
  double energy_final;
  double dissipation; /* 2 mu int ||Delta u||^2 */
} zkd_simulation_stats;

/* Opaque spectral field: Fourier coefficients on an nx x ny wavenumber grid,
   normalized as f^(m,n) = (2 pi)^-2 int f e^{-i(mx+ny)}. */
typedef struct zkd_field zkd_field;

ZKD_API const char* zkd_version(void);
ZKD_API const char* zkd_last_error(void);
ZKD_API const char* zkd_status_name(zkd_status status);
/* CLI exit code for a status (0 ok, 1 internal, 2 parse, 3 validation, ...). */
ZKD_API int zkd_exit_code(zkd_status status);
ZKD_API zkd_symbol zkd_symbol_default(void);

ZKD_API zkd_status zkd_field_create(int nx, int ny, zkd_field** out);
/* profile: zero | single-mode | cos-x | two-mode | gaussian | random.
   m, n apply to single-mode, width to gaussian, band to random. */
ZKD_API zkd_status zkd_field_profile(int nx, int ny, const char* profile, double amplitude,
                                     int m, int n, double width, int band, uint64_t seed,
                                     zkd_field** out);
ZKD_API zkd_status zkd_field_clone(const zkd_field* field, zkd_field** out);
ZKD_API void zkd_field_destroy(zkd_field* field);
ZKD_API zkd_status zkd_field_shape(const zkd_field* field, int* nx, int* ny);
ZKD_API zkd_status zkd_field_get(const zkd_field* field, int m, int n, double* re, double* im);
ZKD_API zkd_status zkd_field_set(zkd_field* field, int m, int n, double re, double im);
/* Real-space samples u(x_a, y_b), x outer, nx * ny doubles. */
ZKD_API zkd_status zkd_field_samples(const zkd_field* field, double* out, size_t count);

ZKD_API zkd_status zkd_propagate(const zkd_field* in, double t, const zkd_symbol* symbol,
                                 zkd_field** out);
ZKD_API zkd_status zkd_l2_norm(const zkd_field* field, double* out);
ZKD_API zkd_status zkd_sobolev_norm(const zkd_field* field, double s, double* out);
ZKD_API zkd_status zkd_mass(const zkd_field* field, double* out);
ZKD_API zkd_status zkd_energy(const zkd_field* field, const zkd_symbol* symbol, double* out);

ZKD_API zkd_status zkd_field_save(const zkd_field* field, const char* path, int format);
ZKD_API zkd_status zkd_field_load(const char* path, zkd_field** out);

/* Integrates from phi to t_end; *final_state receives a new field. stats may
   be NULL. */
ZKD_API zkd_status zkd_simulate(const zkd_simulation* params, const zkd_field* phi,
                                zkd_field** final_state, zkd_simulation_stats* stats);

/* sum_{m=1}^{n} exp(2 pi i h(m)), h(m) = sum_i coeffs[i] m^i, i = 0..degree. */
ZKD_API zkd_status zkd_weyl_sum(const double* coeffs, int degree, int64_t n, double* re,
                                double* im);
ZKD_API zkd_status zkd_dirichlet_approx(double r, int64_t lambda, int64_t* a, int64_t* q);
ZKD_API zkd_status zkd_weyl_bound(double n, double q, int degree, double delta, double* out);

/* Runs a CLI command (simulate, regularized-family, strichartz-scan,
   weyl-scan, kernel-scan, vdc-scan, convergence, commutator-scan).
   config_path may be NULL; overrides are "key=value" strings. On failure an
   error.json is written into out_dir when possible. */
ZKD_API zkd_status zkd_experiment_run(const char* command, const char* config_path,
                                      const char* out_dir, const char* const* overrides,
                                      size_t override_count);

/* Newline-separated lists for help text; static storage. */
ZKD_API const char* zkd_command_names(void);
ZKD_API const char* zkd_preset_names(const char* command);

#ifdef __cplusplus
}
#endif

#endif /* ZKDISP_ZKDISP_H_ */
