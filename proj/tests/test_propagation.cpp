#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpp/errors.hpp"
#include "kpp/preset.hpp"
#include "kpp/propagation.hpp"

namespace {

kpp::SimConfig base_config() {
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 8.0;
  cfg.nx = 256;
  cfg.dt = 0.05;
  cfg.T = 2.0;
  return cfg;
}

double snapshot_max(const kpp::FrontField& f, int j) {
  const double* row = f.row(j);
  return *std::max_element(row, row + f.n_nodes());
}

kpp::ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const kpp::Error& e) {
    return e.code();
  }
  return kpp::ErrorCode{};
}

}  // namespace

TEST_SUITE("propagation") {

TEST_CASE("configuration validation") {
  const auto p = kpp::builtin_preset("fisher-const");
  auto run = [&](kpp::SimConfig cfg) { kpp::simulate(p.a, p.reaction, p.means, cfg); };

  auto cfg = base_config();
  cfg.X = 8.3;  // not an integer multiple of L
  CHECK(code_of([&] { run(cfg); }) == kpp::ErrorCode::InvalidArgument);

  cfg = base_config();
  cfg.nx = 250;  // not a multiple of 2X/L
  CHECK(code_of([&] { run(cfg); }) == kpp::ErrorCode::InvalidArgument);

  cfg = base_config();
  cfg.nx = 48;  // three points per period
  CHECK(code_of([&] { run(cfg); }) == kpp::ErrorCode::InvalidArgument);

  cfg = base_config();
  cfg.theta_level = 1.0;
  CHECK(code_of([&] { run(cfg); }) == kpp::ErrorCode::InvalidArgument);

  cfg = base_config();
  cfg.dt = 0.4;  // above 0.5/max|f_s| = 1/6
  CHECK(code_of([&] { run(cfg); }) == kpp::ErrorCode::InvalidArgument);
}

TEST_CASE("stationary initial data stays put") {
  // Constant diffusion with oscillating growth, then oscillating diffusion
  // with the shared zero: both legs hold the equilibrium to 1e-8.
  {
    const auto p = kpp::builtin_preset("het-mu");
    kpp::SimConfig cfg;
    cfg.L = 0.25;
    cfg.X = 1.0;
    cfg.nx = 128;
    cfg.dt = 0.05;
    cfg.T = 2.0;
    cfg.ic = kpp::SimConfig::Ic::Stationary;
    const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
    REQUIRE_FALSE(f.p_line.empty());
    const double* last = f.row(f.n_snapshots() - 1);
    for (int i = 0; i < f.n_nodes(); ++i) CHECK(std::fabs(last[i] - f.p_line[i]) < 1e-8);
  }
  {
    const auto p = kpp::builtin_preset("common-zero");
    kpp::SimConfig cfg;
    cfg.L = 0.5;
    cfg.X = 2.0;
    cfg.nx = 128;
    cfg.dt = 0.05;
    cfg.T = 2.0;
    cfg.ic = kpp::SimConfig::Ic::Stationary;
    const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
    const double* last = f.row(f.n_snapshots() - 1);
    for (int i = 0; i < f.n_nodes(); ++i) CHECK(std::fabs(last[i] - 1.0) < 1e-8);
  }
}

TEST_CASE("pure diffusion contracts the sup norm") {
  const auto zero = kpp::ReactionModel::custom(
      [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
      kpp::PeriodicCoefficient::constant(0.0), 1.0);
  const auto a = kpp::PeriodicCoefficient::series(1.0, {{1, 0.5, 0.0}}, 0.5, 1.5);
  kpp::MeanSet means;
  means.a_arith = 1.0;
  means.a_harm = 0.8660254037844386;
  means.mu_arith = 0.0;
  means.p0 = 1.0;

  auto cfg = base_config();
  cfg.ic = kpp::SimConfig::Ic::Bump;
  cfg.snapshot_dt = 0.1;
  const auto f = kpp::simulate(a, zero, means, cfg);
  CHECK(f.p_line.empty());
  for (int j = 1; j < f.n_snapshots(); ++j)
    CHECK(snapshot_max(f, j) <= snapshot_max(f, j - 1) + 1e-12);

  // No level set ever forms at theta p0 = 0.5, so the fit has nothing to use.
  CHECK(code_of([&] { kpp::measure_speed(f); }) == kpp::ErrorCode::Numeric);
}

TEST_CASE("discrete comparison keeps the solution inside the box") {
  const auto p = kpp::builtin_preset("het-mu");
  kpp::SimConfig cfg;
  cfg.L = 0.25;
  cfg.X = 2.0;
  cfg.nx = 256;
  cfg.dt = 0.05;
  cfg.T = 2.0;
  cfg.ic = kpp::SimConfig::Ic::Bump;
  cfg.ic_height = 0.05;
  cfg.ic_width = 0.5;
  cfg.snapshot_dt = 0.25;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
  REQUIRE_FALSE(f.p_line.empty());
  for (int j = 0; j < f.n_snapshots(); ++j) {
    const double* row = f.row(j);
    for (int i = 0; i < f.n_nodes(); ++i) {
      CHECK(row[i] >= -1e-12);
      CHECK(row[i] <= f.p_line[i] + 1e-9);
    }
  }
}

TEST_CASE("step data selects the classical speed") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 128.0;
  cfg.nx = 2048;
  cfg.dt = 0.05;
  cfg.T = 60.0;
  cfg.snapshot_dt = 3.0;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);

  const auto est = kpp::measure_speed(f);
  CHECK(std::fabs(est.c_measured - 2.0) < 0.06);
  CHECK(est.fit_residual < 0.05 * est.c_measured * (est.t_b - est.t_a));

  // A sharp step dips at the corner while it rounds off, then the run is
  // monotone; the dip must not outlast the opening transient.
  CHECK(f.monotone_since * f.dt < 0.2 * cfg.T);

  // Step-size robustness: halving dt must not slow the front by more than 2%.
  auto fine = cfg;
  fine.dt = 0.025;
  const auto f2 = kpp::simulate(p.a, p.reaction, p.means, fine);
  const auto est2 = kpp::measure_speed(f2);
  CHECK(est2.c_measured >= est.c_measured - 0.02 * est.c_measured);
}

TEST_CASE("smooth monotone data stays monotone in time") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 16.0;
  cfg.nx = 256;
  cfg.dt = 0.05;
  cfg.T = 2.0;
  cfg.ic = kpp::SimConfig::Ic::Tanh;
  cfg.ic_width = 4.0;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
  CHECK(f.monotone_since == 0);
  CHECK(f.monotone_in_t());
}

TEST_CASE("pulsating relation at the measured speed") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 64.0;
  cfg.nx = 1024;
  cfg.dt = 0.05;
  cfg.T = 28.0;
  cfg.ic_position = 28.0;
  cfg.snapshot_dt = 1.0;
  const auto warm = kpp::simulate(p.a, p.reaction, p.means, cfg);
  const double c_m = kpp::measure_speed(warm).c_measured;

  auto aligned = cfg;
  aligned.align_cadence_c = c_m;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, aligned);
  CHECK(std::fabs(f.snapshot_dt - cfg.L / c_m) < 1e-12);

  const double late = kpp::pulsating_residual(f, cfg.L, c_m, 1, 14.0);
  CHECK(late < 5e-3 * f.p0);

  const double early = kpp::pulsating_residual(f, cfg.L, c_m, 1, 1.0);
  CHECK(late <= early);

  const double twice = kpp::pulsating_residual(f, cfg.L, c_m, 2, 14.0);
  CHECK(twice <= 2.0 * late + 1e-12);

  // Residual against a 20%-off speed needs a different cadence.
  CHECK(code_of([&] { kpp::pulsating_residual(f, cfg.L, 1.2 * c_m, 1, 14.0); }) ==
        kpp::ErrorCode::Numeric);
}

TEST_CASE("phase normalization hits the half-mass level") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 16.0;
  cfg.nx = 512;
  cfg.dt = 0.01;
  cfg.T = 6.0;
  cfg.ic_position = 6.0;
  cfg.snapshot_dt = 0.05;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);

  const double s = kpp::normalize_phase(f, f.p0);
  CHECK(s > f.times.front());
  CHECK(s < f.times.back() - 1.0);

  // Independent reading of the unit-square mass at the returned shift.
  auto cell_mass = [&](double t) {
    int j = 0;
    while (j + 2 < f.n_snapshots() && f.times[j + 1] <= t) ++j;
    const double w = (t - f.times[j]) / (f.times[j + 1] - f.times[j]);
    double acc = 0.0;
    const double hx = f.xs[1] - f.xs[0];
    for (int i = 0; i + 1 < f.n_nodes(); ++i) {
      if (f.xs[i] < 0.0 || f.xs[i + 1] > 1.0) continue;
      const double ua = f.value(j, i) * (1.0 - w) + f.value(j + 1, i) * w;
      const double ub = f.value(j, i + 1) * (1.0 - w) + f.value(j + 1, i + 1) * w;
      acc += 0.5 * (ua + ub) * hx;
    }
    return acc;
  };
  const int nq = 64;
  double mass = 0.0;
  for (int q = 0; q <= nq; ++q)
    mass += ((q == 0 || q == nq) ? 0.5 : 1.0) * cell_mass(s + static_cast<double>(q) / nq) / nq;
  CHECK(std::fabs(mass - 0.5 * f.p0) < 0.02 * f.p0);

  // Replaying with rebased clocks shifts the answer by exactly the rebase.
  auto shifted = f;
  for (double& t : shifted.times) t -= 1.5;
  const double s2 = kpp::normalize_phase(shifted, f.p0);
  CHECK(std::fabs((s - 1.5) - s2) < f.dt);

  // A field that already covers the unit square has no crossing to find.
  auto full = cfg;
  full.ic_position = -3.0;
  full.T = 2.0;
  const auto f2 = kpp::simulate(p.a, p.reaction, p.means, full);
  CHECK(code_of([&] { kpp::normalize_phase(f2, f2.p0); }) == kpp::ErrorCode::Numeric);
}

TEST_CASE("constant field sits at the target by convention") {
  kpp::FrontField f;
  f.xs = {-2.0, -1.0, 0.0, 1.0, 2.0};
  f.times = {0.0, 1.0, 2.0, 3.0};
  f.data.assign(f.xs.size() * f.times.size(), 0.5);
  f.p0 = 1.0;
  CHECK(kpp::normalize_phase(f, 1.0) == 0.0);

  kpp::FrontField off;
  off.xs = {2.0, 3.0};
  off.times = {0.0, 1.0, 2.0};
  off.data.assign(6, 0.0);
  CHECK(code_of([&] { kpp::normalize_phase(off, 1.0); }) == kpp::ErrorCode::InvalidArgument);
}

TEST_CASE("profile comparison against the matched homogenized front") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 64.0;
  cfg.nx = 1024;
  cfg.dt = 0.02;
  cfg.T = 30.0;
  cfg.ic_position = 50.0;
  cfg.snapshot_dt = 0.05;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
  const double s = kpp::normalize_phase(f, f.p0);

  const auto u0 = kpp::homogenized_front(p.reaction, p.means, 2.0);
  const double d = kpp::profile_compare(f, s, u0, -10.0, 4.0);
  CHECK(d < 2e-2 * f.p0);

  // An over-fast profile drifts: widening the window collects more mismatch.
  const auto fast = kpp::homogenized_front(p.reaction, p.means, 2.4);
  const double nar = kpp::profile_compare(f, s, fast, -3.0, 1.0);
  const double wide = kpp::profile_compare(f, s, fast, -10.0, 4.0);
  CHECK(wide > nar);
  CHECK(wide > d);

  CHECK(code_of([&] { kpp::profile_compare(f, s, u0, -100.0, 4.0); }) ==
        kpp::ErrorCode::InvalidArgument);
  CHECK(code_of([&] { kpp::profile_compare(f, f.times.back(), u0, -10.0, 4.0); }) ==
        kpp::ErrorCode::InvalidArgument);
}

TEST_CASE("boundary contact is reported, not fitted around") {
  const auto p = kpp::builtin_preset("fisher-const");
  kpp::SimConfig cfg;
  cfg.L = 1.0;
  cfg.X = 8.0;
  cfg.nx = 256;
  cfg.dt = 0.05;
  cfg.T = 10.0;
  cfg.ic_position = 0.0;
  const auto f = kpp::simulate(p.a, p.reaction, p.means, cfg);
  CHECK(code_of([&] { kpp::measure_speed(f); }) == kpp::ErrorCode::Numeric);
}

}  // TEST_SUITE
