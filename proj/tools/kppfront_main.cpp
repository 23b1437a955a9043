// Command-line harness for the periodic Fisher-KPP front toolkit.  Every
// subcommand loads a preset (built-in name or file path), runs one pipeline
// through the C interface, prints a short summary, and writes deterministic
// CSV tables.  Exit codes: 0 success, 1 numerical failure, 2 validation or
// usage failure.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kppfront.h"

namespace {

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int exit_code(kpp_status s) { return s == KPP_ERR_NUMERIC ? 1 : 2; }

[[noreturn]] void die(kpp_status s, const std::string& context) {
  std::cerr << "error: " << context << ": " << kpp_last_error() << "\n";
  std::exit(exit_code(s));
}

using PresetPtr = std::unique_ptr<kpp_preset, decltype(&kpp_preset_free)>;
using FieldPtr = std::unique_ptr<kpp_field, decltype(&kpp_field_free)>;
using ProfilePtr = std::unique_ptr<kpp_profile, decltype(&kpp_profile_free)>;
using StationaryPtr = std::unique_ptr<kpp_stationary, decltype(&kpp_stationary_free)>;

PresetPtr load_preset(const std::string& name) {
  kpp_preset* raw = nullptr;
  const kpp_status s = kpp_preset_load(name.c_str(), &raw);
  if (s != KPP_OK) die(s, "loading preset '" + name + "'");
  return PresetPtr(raw, kpp_preset_free);
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    std::exit(2);
  }
  return out;
}

struct Common {
  std::string preset;
  std::string out = ".";
  int grid_n = 256;
  int threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--preset", c.preset, "built-in preset name or preset file path")->required();
  cmd->add_option("--out", c.out, "output directory for CSV tables");
  cmd->add_option("--grid-n", c.grid_n, "cell grid resolution")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "worker threads for sweeps (0 = all cores)");
}

std::vector<double> checked_L_list(const std::vector<double>& Ls) {
  for (double L : Ls)
    if (!(L > 0.0) || L > 1.0) {
      std::cerr << "error: --L values must lie in (0, 1], got " << fmt(L) << "\n";
      std::exit(2);
    }
  return Ls;
}

int run_means(const Common& c) {
  PresetPtr p = load_preset(c.preset);
  char report[4096];
  int required_ok = 0, all_ok = 0;
  kpp_status s = kpp_validate(p.get(), 0, report, sizeof report, &required_ok, &all_ok);
  if (s != KPP_OK) die(s, "hypothesis validation");
  std::cout << report;
  kpp_means_t m{};
  kpp_means(p.get(), &m);
  std::cout << "a_arith = " << fmt(m.a_arith) << "\n"
            << "a_harm = " << fmt(m.a_harm) << "\n"
            << "mu_arith = " << fmt(m.mu_arith) << "\n"
            << "p0 = " << fmt(m.p0) << "\n"
            << "c_star_hom = " << fmt(m.c_star_hom) << "\n";
  if (!required_ok) {
    std::cerr << "error: required hypotheses failed for preset '" << c.preset << "'\n";
    return 2;
  }
  auto csv = open_csv(c.out, "means.csv");
  csv << "a_arith,a_harm,mu_arith,p0,c_star_hom\n"
      << fmt(m.a_arith) << ',' << fmt(m.a_harm) << ',' << fmt(m.mu_arith) << ',' << fmt(m.p0)
      << ',' << fmt(m.c_star_hom) << "\n";
  return 0;
}

int run_speed_sweep(const Common& c, const std::vector<double>& Ls) {
  PresetPtr p = load_preset(c.preset);
  std::vector<kpp_speed_row_t> rows(Ls.size());
  const kpp_status s = kpp_speed_sweep(p.get(), c.grid_n, Ls.data(),
                                       static_cast<int>(Ls.size()), c.threads, rows.data());
  if (s != KPP_OK) die(s, "speed sweep");
  auto csv = open_csv(c.out, "speed_sweep.csv");
  csv << "L,c_star,lambda_star,c_hom,gap\n";
  bool failed = false;
  for (const auto& r : rows) {
    if (!r.ok) {
      std::cerr << "L = " << fmt(r.L) << " failed: " << r.error << "\n";
      failed = true;
      continue;
    }
    csv << fmt(r.L) << ',' << fmt(r.c_star) << ',' << fmt(r.lambda_star) << ',' << fmt(r.c_hom)
        << ',' << fmt(r.gap) << "\n";
    std::cout << "L = " << fmt(r.L) << "  c* = " << fmt(r.c_star)
              << "  lambda* = " << fmt(r.lambda_star) << "  gap = " << fmt(r.gap) << "\n";
  }
  return failed ? 1 : 0;
}

int run_steady_sweep(const Common& c, const std::vector<double>& Ls) {
  PresetPtr p = load_preset(c.preset);
  std::vector<kpp_steady_row_t> rows(Ls.size());
  const kpp_status s = kpp_steady_sweep(p.get(), c.grid_n, Ls.data(),
                                        static_cast<int>(Ls.size()), c.threads, rows.data());
  if (s != KPP_OK) die(s, "steady sweep");
  auto csv = open_csv(c.out, "steady_sweep.csv");
  csv << "L,p_min,p_max,sup_gap\n";
  bool failed = false;
  for (const auto& r : rows) {
    if (!r.ok) {
      std::cerr << "L = " << fmt(r.L) << " failed: " << r.error << "\n";
      failed = true;
      continue;
    }
    csv << fmt(r.L) << ',' << fmt(r.p_min) << ',' << fmt(r.p_max) << ',' << fmt(r.sup_gap)
        << "\n";
    std::cout << "L = " << fmt(r.L) << "  min = " << fmt(r.p_min) << "  max = " << fmt(r.p_max)
              << "  sup_gap = " << fmt(r.sup_gap) << "\n";
  }
  return failed ? 1 : 0;
}

int run_front(const Common& c, double speed, double half_width, int n_points) {
  PresetPtr p = load_preset(c.preset);
  kpp_profile* raw = nullptr;
  const kpp_status s = kpp_front_solve(p.get(), speed, half_width, n_points, &raw);
  if (s != KPP_OK) die(s, "front profile");
  ProfilePtr fp(raw, kpp_profile_free);
  kpp_profile_info_t info{};
  kpp_profile_info(fp.get(), &info);
  std::cout << "c = " << fmt(info.c) << "  p0 = " << fmt(info.p0)
            << "  residual = " << fmt(info.residual) << "\n";
  auto csv = open_csv(c.out, "profile.csv");
  csv << "x,U0\n";
  const int n = kpp_profile_n(fp.get());
  const double* xs = kpp_profile_xs(fp.get());
  const double* us = kpp_profile_values(fp.get());
  for (int i = 0; i < n; ++i) csv << fmt(xs[i]) << ',' << fmt(us[i]) << "\n";
  return 0;
}

void write_level_csv(const Common& c, const kpp_field* f) {
  auto csv = open_csv(c.out, "level.csv");
  csv << "t,x_theta\n";
  const int n = kpp_field_level_count(f);
  const double* ts = kpp_field_level_times(f);
  const double* xs = kpp_field_level_positions(f);
  for (int i = 0; i < n; ++i) csv << fmt(ts[i]) << ',' << fmt(xs[i]) << "\n";
}

void write_field_csv(const Common& c, const kpp_field* f) {
  auto csv = open_csv(c.out, "field.csv");
  csv << "t,x,u\n";
  const int nx = kpp_field_nx(f), nt = kpp_field_nt(f);
  const double* xs = kpp_field_xs(f);
  const double* ts = kpp_field_times(f);
  const double* data = kpp_field_data(f);
  for (int j = 0; j < nt; ++j)
    for (int i = 0; i < nx; ++i)
      csv << fmt(ts[j]) << ',' << fmt(xs[i]) << ','
          << fmt(data[static_cast<size_t>(j) * nx + i]) << "\n";
}

// Binary layout: "KPPF", uint32 layout version (1), int64 nx, int64 nt,
// nx doubles (xs), nt doubles (times), nt*nx doubles (rows), host-endian.
void write_field_bin(const Common& c, const kpp_field* f) {
  std::filesystem::create_directories(c.out);
  const auto path = std::filesystem::path(c.out) / "field.bin";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    std::exit(2);
  }
  const std::int64_t nx = kpp_field_nx(f), nt = kpp_field_nt(f);
  const std::uint32_t version = 1;
  out.write("KPPF", 4);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&nx), sizeof nx);
  out.write(reinterpret_cast<const char*>(&nt), sizeof nt);
  out.write(reinterpret_cast<const char*>(kpp_field_xs(f)), nx * 8);
  out.write(reinterpret_cast<const char*>(kpp_field_times(f)), nt * 8);
  out.write(reinterpret_cast<const char*>(kpp_field_data(f)), nt * nx * 8);
}

int run_simulate(const Common& c, const kpp_sim_config_t& cfg, const std::string& field_format) {
  PresetPtr p = load_preset(c.preset);
  kpp_field* raw = nullptr;
  const kpp_status s = kpp_simulate(p.get(), &cfg, &raw);
  if (s != KPP_OK) die(s, "simulation");
  FieldPtr f(raw, kpp_field_free);

  kpp_field_info_t info{};
  kpp_field_info(f.get(), &info);
  std::cout << "snapshots = " << kpp_field_nt(f.get()) << "  dt = " << fmt(info.dt)
            << "  snapshot_dt = " << fmt(info.snapshot_dt)
            << "  monotone_since_step = " << info.monotone_since << "\n";

  write_level_csv(c, f.get());
  if (field_format == "csv")
    write_field_csv(c, f.get());
  else if (field_format == "bin")
    write_field_bin(c, f.get());

  kpp_speed_fit_t fit{};
  if (kpp_measure_speed(f.get(), -1.0, -1.0, &fit) == KPP_OK)
    std::cout << "measured speed = " << fmt(fit.c_measured) << " on [" << fmt(fit.t_a) << ", "
              << fmt(fit.t_b) << "]  fit residual = " << fmt(fit.fit_residual) << "\n";
  else
    std::cout << "no speed estimate: " << kpp_last_error() << "\n";
  return 0;
}

int run_compare(const Common& c, std::vector<double> Ls, double X, int ppp, double dt, double T,
                double theta, double ic_position, double snapshot_dt, double window_lo,
                double window_hi) {
  PresetPtr p = load_preset(c.preset);
  auto csv = open_csv(c.out, "convergence.csv");
  csv << "L,c_star,s_star,distance\n";
  for (double L : Ls) {
    kpp_speed_t sp{};
    kpp_status s = kpp_minimal_speed(p.get(), c.grid_n, L, &sp);
    if (s != KPP_OK) die(s, "minimal speed at L = " + fmt(L));

    kpp_sim_config_t cfg;
    kpp_sim_config_default(&cfg);
    cfg.L = L;
    cfg.X = X;
    cfg.nx = static_cast<int>(std::llround(2.0 * X / L)) * ppp;
    cfg.dt = dt;
    cfg.T = T;
    cfg.theta_level = theta;
    cfg.ic_kind = KPP_IC_STEP;
    cfg.ic_position = ic_position;
    cfg.snapshot_dt = snapshot_dt;

    kpp_field* raw_field = nullptr;
    s = kpp_simulate(p.get(), &cfg, &raw_field);
    if (s != KPP_OK) die(s, "simulation at L = " + fmt(L));
    FieldPtr field(raw_field, kpp_field_free);

    kpp_means_t m{};
    kpp_means(p.get(), &m);
    double s_star = 0.0;
    s = kpp_normalize_phase(field.get(), m.p0, &s_star);
    if (s != KPP_OK) die(s, "phase normalization at L = " + fmt(L));

    kpp_profile* raw_profile = nullptr;
    s = kpp_front_solve(p.get(), sp.c_star, 0.0, 4096, &raw_profile);
    if (s != KPP_OK) die(s, "front profile at L = " + fmt(L));
    ProfilePtr profile(raw_profile, kpp_profile_free);

    double dist = 0.0;
    s = kpp_profile_compare(field.get(), s_star, profile.get(), window_lo, window_hi, &dist);
    if (s != KPP_OK) die(s, "profile comparison at L = " + fmt(L));

    csv << fmt(L) << ',' << fmt(sp.c_star) << ',' << fmt(s_star) << ',' << fmt(dist) << "\n";
    std::cout << "L = " << fmt(L) << "  c* = " << fmt(sp.c_star) << "  s* = " << fmt(s_star)
              << "  distance = " << fmt(dist) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic Fisher-KPP front toolkit"};
  app.require_subcommand(1);

  Common c_means, c_speed, c_steady, c_front, c_sim, c_cmp;
  std::vector<double> L_speed, L_steady, L_cmp;

  CLI::App* means = app.add_subcommand("means", "cell averages, p0, homogenized speed");
  add_common(means, c_means);

  CLI::App* speed = app.add_subcommand("speed-sweep", "minimal speeds over a list of periods");
  add_common(speed, c_speed);
  speed->add_option("--L", L_speed, "period (repeatable), in (0,1]")->required();

  CLI::App* steady = app.add_subcommand("steady-sweep", "stationary states over periods");
  add_common(steady, c_steady);
  steady->add_option("--L", L_steady, "period (repeatable), in (0,1]")->required();

  double front_c = 0.0, front_half_width = 0.0;
  int front_n_points = 4096;
  CLI::App* front = app.add_subcommand("front", "homogenized travelling-front profile");
  add_common(front, c_front);
  front->add_option("--c", front_c, "wave speed (>= homogenized minimal speed)")->required();
  front->add_option("--half-width", front_half_width, "truncation half-width (0 = default)");
  front->add_option("--n-points", front_n_points, "profile nodes");

  kpp_sim_config_t cfg;
  kpp_sim_config_default(&cfg);
  std::string ic = "step", field_format = "csv";
  CLI::App* sim = app.add_subcommand("simulate", "IMEX run of the parabolic equation");
  add_common(sim, c_sim);
  sim->add_option("--L", cfg.L, "period")->required();
  sim->add_option("--X", cfg.X, "domain half-width (integer multiple of L)")->required();
  sim->add_option("--nx", cfg.nx, "grid intervals (multiple of 2X/L)")->required();
  sim->add_option("--dt", cfg.dt, "time step")->required();
  sim->add_option("--T", cfg.T, "final time")->required();
  sim->add_option("--theta", cfg.theta_level, "level-set threshold in (0,1)");
  sim->add_option("--ic", ic, "step | tanh | bump | stationary | front");
  sim->add_option("--ic-position", cfg.ic_position, "initial front location");
  sim->add_option("--ic-width", cfg.ic_width, "tanh/bump length scale");
  sim->add_option("--ic-height", cfg.ic_height, "initial height (0 = preset default)");
  sim->add_option("--snapshot-dt", cfg.snapshot_dt, "snapshot cadence (0 = T/20)");
  sim->add_option("--cadence-c", cfg.align_cadence_c,
                  "align snapshots to L/c for the pulsating check");
  sim->add_option("--field-format", field_format, "csv | bin | none")
      ->check(CLI::IsMember({"csv", "bin", "none"}));

  double cmp_X = 24.0, cmp_dt = 2e-3, cmp_T = 7.0, cmp_theta = 0.5, cmp_pos = 6.0;
  double cmp_snap = 0.02, cmp_wlo = -12.0, cmp_whi = 8.0;
  int cmp_ppp = 24;
  CLI::App* cmp = app.add_subcommand(
      "compare", "simulate, normalize, and compare against the homogenized front");
  add_common(cmp, c_cmp);
  cmp->add_option("--L", L_cmp, "period (repeatable), in (0,1]")->required();
  cmp->add_option("--X", cmp_X, "domain half-width");
  cmp->add_option("--ppp", cmp_ppp, "grid points per period")->check(CLI::PositiveNumber);
  cmp->add_option("--dt", cmp_dt, "time step");
  cmp->add_option("--T", cmp_T, "final time");
  cmp->add_option("--theta", cmp_theta, "level-set threshold");
  cmp->add_option("--ic-position", cmp_pos, "initial step location");
  cmp->add_option("--snapshot-dt", cmp_snap, "snapshot cadence");
  cmp->add_option("--window-lo", cmp_wlo, "comparison window start");
  cmp->add_option("--window-hi", cmp_whi, "comparison window end");

  CLI11_PARSE(app, argc, argv);

  if (means->parsed()) return run_means(c_means);
  if (speed->parsed()) return run_speed_sweep(c_speed, checked_L_list(L_speed));
  if (steady->parsed()) return run_steady_sweep(c_steady, checked_L_list(L_steady));
  if (front->parsed()) return run_front(c_front, front_c, front_half_width, front_n_points);
  if (sim->parsed()) {
    if (ic == "step")
      cfg.ic_kind = KPP_IC_STEP;
    else if (ic == "tanh")
      cfg.ic_kind = KPP_IC_TANH;
    else if (ic == "bump")
      cfg.ic_kind = KPP_IC_BUMP;
    else if (ic == "stationary")
      cfg.ic_kind = KPP_IC_STATIONARY;
    else if (ic == "front")
      cfg.ic_kind = KPP_IC_FRONT;
    else {
      std::cerr << "error: unknown --ic kind '" << ic << "'\n";
      return 2;
    }
    if (!(cfg.L > 0.0) || cfg.L > 1.0) {
      std::cerr << "error: --L must lie in (0, 1]\n";
      return 2;
    }
    return run_simulate(c_sim, cfg, field_format);
  }
  if (cmp->parsed())
    return run_compare(c_cmp, checked_L_list(L_cmp), cmp_X, cmp_ppp, cmp_dt, cmp_T, cmp_theta,
                       cmp_pos, cmp_snap, cmp_wlo, cmp_whi);
  return 2;
}
