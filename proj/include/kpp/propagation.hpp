#pragma once

#include <string>
#include <vector>

#include "kpp/means.hpp"
#include "kpp/steady.hpp"

namespace kpp {

// Configuration for one parabolic run on [-X, X].  X must be an integer
// multiple of L and nx (interval count) a multiple of 2X/L, so every period
// boundary and the points x = 0, 1 used by the phase normalization land on
// grid nodes and an L-shift is an exact node shift.
struct SimConfig {
  double L = 1.0;
  double X = 8.0;
  int nx = 1024;
  double dt = 1e-3;
  double T = 10.0;
  double theta_level = 0.5;

  // Front seeds the homogenized minimal-speed profile centred at ic_position,
  // so the run starts O(L) from the pulsating front instead of relaxing to it
  // through the slow logarithmic transient that step data drags in.
  enum class Ic { Step, Tanh, Bump, Stationary, Front };
  Ic ic = Ic::Step;
  double ic_position = 0.0;
  double ic_width = 1.0;   // tanh / bump length scale
  double ic_height = 0.0;  // <= 0 selects p0 (step, tanh) or p0/2 (bump)

  double snapshot_dt = 0.0;      // <= 0 selects T/20
  double align_cadence_c = 0.0;  // > 0: subdivide dt so snapshots sit exactly L/c apart
};

// Space-time record of one run.  Snapshots are immutable row-major rows over
// the nodes; the level-set trace is recorded at every time step.
struct FrontField {
  std::vector<double> xs;
  std::vector<double> times;
  std::vector<double> data;  // times.size() rows by xs.size() columns

  std::vector<double> level_times;
  std::vector<double> level_positions;  // leftmost x with u >= theta*p0, NaN if absent

  std::vector<double> p_line;  // stationary state sampled on xs (empty if unavailable)

  double L = 0.0;
  double dt = 0.0;
  double snapshot_dt = 0.0;
  double p0 = 0.0;
  double level = 0.0;  // theta * p0

  // First step index from which every subsequent step was nodewise
  // nondecreasing (slack 1e-12); 0 means the entire run was monotone in t.
  int monotone_since = 0;
  bool monotone_in_t() const { return monotone_since == 0; }

  int n_nodes() const { return static_cast<int>(xs.size()); }
  int n_snapshots() const { return static_cast<int>(times.size()); }
  const double* row(int j) const { return data.data() + static_cast<size_t>(j) * xs.size(); }
  double value(int j, int i) const { return row(j)[i]; }
};

// IMEX run: backward-Euler conservative diffusion, explicit reaction.
// Boundary values are held fixed: the left end keeps the initial trace, the
// right end the stationary state's value when it is computable (the initial
// trace otherwise), matching the front's limits 0 and p_L.
FrontField simulate(const PeriodicCoefficient& a, const ReactionModel& r, const MeanSet& means,
                    const SimConfig& cfg);

struct SpeedEstimate {
  double c_measured = 0.0;
  double t_a = 0.0;
  double t_b = 0.0;
  double fit_residual = 0.0;  // max deviation of x_theta from the linear fit
};

// Least-squares linear fit of the level-set trace on [t_a, t_b] (defaults to
// [T/2, T]); the slope magnitude is the measured speed.  Fails when the level
// set is missing, touches the boundary, sweeps fewer than 20 periods, or
// deviates from linearity by 5% of its displacement.
SpeedEstimate measure_speed(const FrontField& field, double t_a = -1.0, double t_b = -1.0);

// Max over snapshot pairs (t, t + k L/c) of |u(t + kL/c, x) - u(t, x + kL)|
// on the interior half of the domain, pairs restricted to t >= from_time.
// Requires the snapshot cadence to equal L/c (see SimConfig::align_cadence_c).
double pulsating_residual(const FrontField& field, double L, double c, int k = 1,
                          double from_time = 0.0);

// Time shift s* with integral of u(t+s, x) over the unit square (0,1)^2 equal
// to p0/2; bisection on the monotone-in-s discrete integral.  A field that
// already sits at the target everywhere returns 0.
double normalize_phase(const FrontField& field, double p0);

// Discrete L2 distance over (0,1) x [window_lo, window_hi] between the
// phase-normalized field u(t~ + s_star, x) and the sliding homogenized
// profile U0(x + c t~ + phi), where phi applies the same unit-square integral
// normalization to U0.
double profile_compare(const FrontField& field, double s_star, const FrontProfile& profile,
                       double window_lo, double window_hi);

}  // namespace kpp
