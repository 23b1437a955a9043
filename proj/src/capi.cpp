#include "kppfront.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "kpp/errors.hpp"
#include "kpp/means.hpp"
#include "kpp/preset.hpp"
#include "kpp/propagation.hpp"
#include "kpp/spectral.hpp"
#include "kpp/speed.hpp"
#include "kpp/steady.hpp"

struct kpp_preset {
  kpp::Preset v;
};
struct kpp_stationary {
  kpp::StationaryState v;
};
struct kpp_profile {
  kpp::FrontProfile v;
};
struct kpp_field {
  kpp::FrontField v;
};

namespace {

thread_local std::string t_error;

kpp_status to_status(kpp::ErrorCode c) {
  switch (c) {
    case kpp::ErrorCode::InvalidArgument:
      return KPP_ERR_INVALID_ARGUMENT;
    case kpp::ErrorCode::Parse:
      return KPP_ERR_PARSE;
    case kpp::ErrorCode::Hypothesis:
      return KPP_ERR_HYPOTHESIS;
    case kpp::ErrorCode::Numeric:
      return KPP_ERR_NUMERIC;
    case kpp::ErrorCode::Io:
      return KPP_ERR_IO;
  }
  return KPP_ERR_NUMERIC;
}

template <typename Fn>
kpp_status guarded(Fn&& fn) {
  try {
    t_error.clear();
    return fn();
  } catch (const kpp::Error& e) {
    t_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    t_error = e.what();
    return KPP_ERR_NUMERIC;
  } catch (...) {
    t_error = "unidentified failure";
    return KPP_ERR_NUMERIC;
  }
}

kpp_status arg_error(const char* msg) {
  t_error = msg;
  return KPP_ERR_INVALID_ARGUMENT;
}

kpp::PeriodicGrid make_grid(int n) { return kpp::PeriodicGrid(n > 0 ? n : 256); }

void copy_error(char* dst, size_t cap, const std::string& src) {
  if (cap == 0) return;
  const size_t n = std::min(src.size(), cap - 1);
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

}  // namespace

extern "C" {

const char* kpp_version(void) { return "1.0.0"; }

const char* kpp_last_error(void) { return t_error.c_str(); }

int kpp_builtin_count(void) {
  return static_cast<int>(kpp::builtin_preset_names().size());
}

const char* kpp_builtin_name(int index) {
  static thread_local std::string name;
  const auto names = kpp::builtin_preset_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  name = names[static_cast<size_t>(index)];
  return name.c_str();
}

kpp_status kpp_preset_load(const char* name_or_path, kpp_preset** out) {
  if (!name_or_path || !out) return arg_error("null argument");
  return guarded([&] {
    *out = new kpp_preset{kpp::resolve_preset(name_or_path)};
    return KPP_OK;
  });
}

void kpp_preset_free(kpp_preset* p) { delete p; }

const char* kpp_preset_name(const kpp_preset* p) { return p ? p->v.name.c_str() : nullptr; }

kpp_status kpp_means(const kpp_preset* p, kpp_means_t* out) {
  if (!p || !out) return arg_error("null argument");
  const kpp::MeanSet& m = p->v.means;
  *out = {m.a_arith, m.a_harm, m.mu_arith, m.p0, m.c_star_hom};
  return KPP_OK;
}

kpp_status kpp_validate(const kpp_preset* p, int grid_n, char* buf, size_t buf_size,
                        int* required_ok, int* all_ok) {
  if (!p) return arg_error("null argument");
  return guarded([&] {
    const kpp::HypothesisReport rep =
        kpp::validate_hypotheses(p->v.a, p->v.reaction, grid_n > 0 ? grid_n : 1024);
    if (buf && buf_size > 0) copy_error(buf, buf_size, rep.to_string());
    if (required_ok) *required_ok = rep.required_pass() ? 1 : 0;
    if (all_ok) *all_ok = rep.all_pass() ? 1 : 0;
    return KPP_OK;
  });
}

kpp_status kpp_rho1(const kpp_preset* p, int grid_n, double L, double* out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::rho1(p->v.a, p->v.reaction.mu(), make_grid(grid_n), L);
    return KPP_OK;
  });
}

kpp_status kpp_k_lambda(const kpp_preset* p, int grid_n, double L, double lambda, double* out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::k_of_lambda(p->v.a, p->v.reaction.mu(), make_grid(grid_n), L, lambda);
    return KPP_OK;
  });
}

kpp_status kpp_minimal_speed(const kpp_preset* p, int grid_n, double L, kpp_speed_t* out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    const kpp::SpeedResult r =
        kpp::minimal_speed(p->v.a, p->v.reaction, p->v.means, make_grid(grid_n), L);
    *out = {r.c_star, r.lambda_star, r.L, r.evaluations};
    return KPP_OK;
  });
}

kpp_status kpp_homogenized_speed(const kpp_preset* p, double* out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::homogenized_speed(p->v.means);
    return KPP_OK;
  });
}

kpp_status kpp_speed_sweep(const kpp_preset* p, int grid_n, const double* Ls, int n_L,
                           int threads, kpp_speed_row_t* rows) {
  if (!p || !Ls || !rows || n_L < 1) return arg_error("null or empty sweep arguments");
  return guarded([&] {
    const std::vector<double> L_list(Ls, Ls + n_L);
    const auto out =
        kpp::speed_sweep(p->v.a, p->v.reaction, p->v.means, make_grid(grid_n), L_list, threads);
    for (int i = 0; i < n_L; ++i) {
      const kpp::SpeedRow& r = out[static_cast<size_t>(i)];
      rows[i].L = r.L;
      rows[i].ok = r.ok ? 1 : 0;
      rows[i].c_star = r.result.c_star;
      rows[i].lambda_star = r.result.lambda_star;
      rows[i].c_hom = r.c_hom;
      rows[i].gap = r.gap;
      copy_error(rows[i].error, sizeof rows[i].error, r.error);
    }
    return KPP_OK;
  });
}

kpp_status kpp_stationary_solve(const kpp_preset* p, int grid_n, double L, double initial_guess,
                                kpp_stationary** out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    *out = new kpp_stationary{
        kpp::stationary_state(p->v.a, p->v.reaction, p->v.means, make_grid(grid_n), L,
                              initial_guess)};
    return KPP_OK;
  });
}

void kpp_stationary_free(kpp_stationary* s) { delete s; }

int kpp_stationary_n(const kpp_stationary* s) {
  return s ? static_cast<int>(s->v.values.size()) : 0;
}

const double* kpp_stationary_values(const kpp_stationary* s) {
  return s ? s->v.values.data() : nullptr;
}

kpp_status kpp_stationary_info(const kpp_stationary* s, kpp_stationary_info_t* out) {
  if (!s || !out) return arg_error("null argument");
  *out = {s->v.L, s->v.residual, s->v.newton_iterations, s->v.march_steps, s->v.min(), s->v.max()};
  return KPP_OK;
}

kpp_status kpp_steady_sweep(const kpp_preset* p, int grid_n, const double* Ls, int n_L,
                            int threads, kpp_steady_row_t* rows) {
  if (!p || !Ls || !rows || n_L < 1) return arg_error("null or empty sweep arguments");
  return guarded([&] {
    const std::vector<double> L_list(Ls, Ls + n_L);
    const auto out = kpp::stationary_sweep(p->v.a, p->v.reaction, p->v.means, make_grid(grid_n),
                                           L_list, threads);
    for (int i = 0; i < n_L; ++i) {
      const kpp::SteadyRow& r = out[static_cast<size_t>(i)];
      rows[i].L = r.L;
      rows[i].ok = r.ok ? 1 : 0;
      rows[i].p_min = r.p_min;
      rows[i].p_max = r.p_max;
      rows[i].sup_gap = r.sup_gap;
      copy_error(rows[i].error, sizeof rows[i].error, r.error);
    }
    return KPP_OK;
  });
}

kpp_status kpp_front_solve(const kpp_preset* p, double c, double half_width, int n_points,
                           kpp_profile** out) {
  if (!p || !out) return arg_error("null argument");
  return guarded([&] {
    *out = new kpp_profile{kpp::homogenized_front(p->v.reaction, p->v.means, c, half_width,
                                                  n_points > 0 ? n_points : 4096)};
    return KPP_OK;
  });
}

void kpp_profile_free(kpp_profile* f) { delete f; }

int kpp_profile_n(const kpp_profile* f) { return f ? static_cast<int>(f->v.xs.size()) : 0; }

const double* kpp_profile_xs(const kpp_profile* f) { return f ? f->v.xs.data() : nullptr; }

const double* kpp_profile_values(const kpp_profile* f) {
  return f ? f->v.values.data() : nullptr;
}

kpp_status kpp_profile_info(const kpp_profile* f, kpp_profile_info_t* out) {
  if (!f || !out) return arg_error("null argument");
  *out = {f->v.c, f->v.p0, f->v.residual};
  return KPP_OK;
}

void kpp_sim_config_default(kpp_sim_config_t* cfg) {
  if (!cfg) return;
  *cfg = {};
  cfg->L = 1.0;
  cfg->X = 8.0;
  cfg->nx = 1024;
  cfg->dt = 1e-3;
  cfg->T = 10.0;
  cfg->theta_level = 0.5;
  cfg->ic_kind = KPP_IC_STEP;
}

kpp_status kpp_simulate(const kpp_preset* p, const kpp_sim_config_t* cfg, kpp_field** out) {
  if (!p || !cfg || !out) return arg_error("null argument");
  if (cfg->ic_kind < KPP_IC_STEP || cfg->ic_kind > KPP_IC_FRONT)
    return arg_error("unknown initial-condition kind");
  return guarded([&] {
    kpp::SimConfig c;
    c.L = cfg->L;
    c.X = cfg->X;
    c.nx = cfg->nx;
    c.dt = cfg->dt;
    c.T = cfg->T;
    c.theta_level = cfg->theta_level;
    c.ic = static_cast<kpp::SimConfig::Ic>(cfg->ic_kind);
    c.ic_position = cfg->ic_position;
    c.ic_width = cfg->ic_width;
    c.ic_height = cfg->ic_height;
    c.snapshot_dt = cfg->snapshot_dt;
    c.align_cadence_c = cfg->align_cadence_c;
    *out = new kpp_field{kpp::simulate(p->v.a, p->v.reaction, p->v.means, c)};
    return KPP_OK;
  });
}

void kpp_field_free(kpp_field* f) { delete f; }

int kpp_field_nx(const kpp_field* f) { return f ? f->v.n_nodes() : 0; }

int kpp_field_nt(const kpp_field* f) { return f ? f->v.n_snapshots() : 0; }

const double* kpp_field_xs(const kpp_field* f) { return f ? f->v.xs.data() : nullptr; }

const double* kpp_field_times(const kpp_field* f) { return f ? f->v.times.data() : nullptr; }

const double* kpp_field_data(const kpp_field* f) { return f ? f->v.data.data() : nullptr; }

int kpp_field_level_count(const kpp_field* f) {
  return f ? static_cast<int>(f->v.level_times.size()) : 0;
}

const double* kpp_field_level_times(const kpp_field* f) {
  return f ? f->v.level_times.data() : nullptr;
}

const double* kpp_field_level_positions(const kpp_field* f) {
  return f ? f->v.level_positions.data() : nullptr;
}

const double* kpp_field_p_line(const kpp_field* f) {
  return f && !f->v.p_line.empty() ? f->v.p_line.data() : nullptr;
}

kpp_status kpp_field_info(const kpp_field* f, kpp_field_info_t* out) {
  if (!f || !out) return arg_error("null argument");
  *out = {f->v.L, f->v.dt, f->v.snapshot_dt, f->v.p0, f->v.level, f->v.monotone_since};
  return KPP_OK;
}

kpp_status kpp_measure_speed(const kpp_field* f, double t_a, double t_b, kpp_speed_fit_t* out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] {
    const kpp::SpeedEstimate e = kpp::measure_speed(f->v, t_a, t_b);
    *out = {e.c_measured, e.t_a, e.t_b, e.fit_residual};
    return KPP_OK;
  });
}

kpp_status kpp_pulsating_residual(const kpp_field* f, double L, double c, int k,
                                  double from_time, double* out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::pulsating_residual(f->v, L, c, k, from_time);
    return KPP_OK;
  });
}

kpp_status kpp_normalize_phase(const kpp_field* f, double p0, double* out) {
  if (!f || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::normalize_phase(f->v, p0);
    return KPP_OK;
  });
}

kpp_status kpp_profile_compare(const kpp_field* f, double s_star, const kpp_profile* profile,
                               double window_lo, double window_hi, double* out) {
  if (!f || !profile || !out) return arg_error("null argument");
  return guarded([&] {
    *out = kpp::profile_compare(f->v, s_star, profile->v, window_lo, window_hi);
    return KPP_OK;
  });
}

}  // extern "C"
