/* C interface to the periodic Fisher-KPP front toolkit.
 *
 * All entry points return a kpp_status; on any nonzero status the thread's
 * last-error message is available through kpp_last_error().  Handles are
 * opaque and freed with their matching kpp_*_free function; arrays returned
 * by getters point into the handle and stay valid until it is freed.
 */
#ifndef KPPFRONT_H
#define KPPFRONT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kpp_status {
  KPP_OK = 0,
  KPP_ERR_INVALID_ARGUMENT = 1,
  KPP_ERR_PARSE = 2,
  KPP_ERR_HYPOTHESIS = 3,
  KPP_ERR_NUMERIC = 4,
  KPP_ERR_IO = 5
} kpp_status;

typedef struct kpp_preset kpp_preset;
typedef struct kpp_stationary kpp_stationary;
typedef struct kpp_profile kpp_profile;
typedef struct kpp_field kpp_field;

const char* kpp_version(void);
/* Message describing this thread's most recent failure; empty on success. */
const char* kpp_last_error(void);

/* ---- presets ---------------------------------------------------------- */

int kpp_builtin_count(void);
const char* kpp_builtin_name(int index);

/* Resolves a built-in name first, then a file path. */
kpp_status kpp_preset_load(const char* name_or_path, kpp_preset** out);
void kpp_preset_free(kpp_preset* p);
const char* kpp_preset_name(const kpp_preset* p);

typedef struct kpp_means_t {
  double a_arith;
  double a_harm;
  double mu_arith;
  double p0;
  double c_star_hom;
} kpp_means_t;

kpp_status kpp_means(const kpp_preset* p, kpp_means_t* out);

/* Writes the hypothesis report into buf (truncating if needed); required_ok
 * is 1 when every required hypothesis holds, all_ok when all do. */
kpp_status kpp_validate(const kpp_preset* p, int grid_n, char* buf, size_t buf_size,
                        int* required_ok, int* all_ok);

/* ---- spectral --------------------------------------------------------- */

kpp_status kpp_rho1(const kpp_preset* p, int grid_n, double L, double* out);
kpp_status kpp_k_lambda(const kpp_preset* p, int grid_n, double L, double lambda, double* out);

/* ---- speeds ----------------------------------------------------------- */

typedef struct kpp_speed_t {
  double c_star;
  double lambda_star;
  double L;
  int evaluations;
} kpp_speed_t;

kpp_status kpp_minimal_speed(const kpp_preset* p, int grid_n, double L, kpp_speed_t* out);
kpp_status kpp_homogenized_speed(const kpp_preset* p, double* out);

typedef struct kpp_speed_row_t {
  double L;
  int ok;
  double c_star;
  double lambda_star;
  double c_hom;
  double gap;
  char error[192];
} kpp_speed_row_t;

kpp_status kpp_speed_sweep(const kpp_preset* p, int grid_n, const double* Ls, int n_L,
                           int threads, kpp_speed_row_t* rows);

/* ---- stationary states ------------------------------------------------ */

typedef struct kpp_stationary_info_t {
  double L;
  double residual;
  int newton_iterations;
  int march_steps;
  double p_min;
  double p_max;
} kpp_stationary_info_t;

/* initial_guess <= 0 starts from p0. */
kpp_status kpp_stationary_solve(const kpp_preset* p, int grid_n, double L, double initial_guess,
                                kpp_stationary** out);
void kpp_stationary_free(kpp_stationary* s);
int kpp_stationary_n(const kpp_stationary* s);
const double* kpp_stationary_values(const kpp_stationary* s);
kpp_status kpp_stationary_info(const kpp_stationary* s, kpp_stationary_info_t* out);

typedef struct kpp_steady_row_t {
  double L;
  int ok;
  double p_min;
  double p_max;
  double sup_gap;
  char error[192];
} kpp_steady_row_t;

kpp_status kpp_steady_sweep(const kpp_preset* p, int grid_n, const double* Ls, int n_L,
                            int threads, kpp_steady_row_t* rows);

/* ---- homogenized front profile ---------------------------------------- */

typedef struct kpp_profile_info_t {
  double c;
  double p0;
  double residual;
} kpp_profile_info_t;

/* half_width <= 0 selects the default truncation; n_points <= 0 selects 4096. */
kpp_status kpp_front_solve(const kpp_preset* p, double c, double half_width, int n_points,
                           kpp_profile** out);
void kpp_profile_free(kpp_profile* f);
int kpp_profile_n(const kpp_profile* f);
const double* kpp_profile_xs(const kpp_profile* f);
const double* kpp_profile_values(const kpp_profile* f);
kpp_status kpp_profile_info(const kpp_profile* f, kpp_profile_info_t* out);

/* ---- simulation ------------------------------------------------------- */

enum {
  KPP_IC_STEP = 0,
  KPP_IC_TANH = 1,
  KPP_IC_BUMP = 2,
  KPP_IC_STATIONARY = 3,
  KPP_IC_FRONT = 4 /* homogenized minimal-speed profile centred at ic_position */
};

typedef struct kpp_sim_config_t {
  double L;
  double X;   /* domain is [-X, X]; X an integer multiple of L          */
  int nx;     /* grid intervals; multiple of 2X/L                       */
  double dt;
  double T;
  double theta_level;
  int ic_kind;
  double ic_position;
  double ic_width;
  double ic_height;       /* <= 0: p0 (step/tanh) or p0/2 (bump)        */
  double snapshot_dt;     /* <= 0: T/20                                 */
  double align_cadence_c; /* > 0: snapshots exactly L/c apart           */
} kpp_sim_config_t;

void kpp_sim_config_default(kpp_sim_config_t* cfg);

kpp_status kpp_simulate(const kpp_preset* p, const kpp_sim_config_t* cfg, kpp_field** out);
void kpp_field_free(kpp_field* f);
int kpp_field_nx(const kpp_field* f);       /* node count                 */
int kpp_field_nt(const kpp_field* f);       /* snapshot count             */
const double* kpp_field_xs(const kpp_field* f);
const double* kpp_field_times(const kpp_field* f);
const double* kpp_field_data(const kpp_field* f);  /* nt rows by nx cols  */
int kpp_field_level_count(const kpp_field* f);
const double* kpp_field_level_times(const kpp_field* f);
const double* kpp_field_level_positions(const kpp_field* f);
/* Stationary state on the simulation nodes, NULL when unavailable. */
const double* kpp_field_p_line(const kpp_field* f);

typedef struct kpp_field_info_t {
  double L;
  double dt;
  double snapshot_dt;
  double p0;
  double level;
  int monotone_since;
} kpp_field_info_t;

kpp_status kpp_field_info(const kpp_field* f, kpp_field_info_t* out);

/* ---- measurements ----------------------------------------------------- */

typedef struct kpp_speed_fit_t {
  double c_measured;
  double t_a;
  double t_b;
  double fit_residual;
} kpp_speed_fit_t;

/* Negative t_a/t_b select the default window [T/2, T]. */
kpp_status kpp_measure_speed(const kpp_field* f, double t_a, double t_b, kpp_speed_fit_t* out);
kpp_status kpp_pulsating_residual(const kpp_field* f, double L, double c, int k,
                                  double from_time, double* out);
kpp_status kpp_normalize_phase(const kpp_field* f, double p0, double* out);
kpp_status kpp_profile_compare(const kpp_field* f, double s_star, const kpp_profile* profile,
                               double window_lo, double window_hi, double* out);

#ifdef __cplusplus
}
#endif

#endif /* KPPFRONT_H */
