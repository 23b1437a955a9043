#pragma once

#include <string>
#include <vector>

#include "kpp/means.hpp"
#include "kpp/spectral.hpp"

namespace kpp {

// Positive periodic steady state p_L on the unit cell.
struct StationaryState {
  std::vector<double> values;  // at cell nodes
  double L = 0.0;
  double residual = 0.0;  // sup norm of the discrete balance
  int newton_iterations = 0;
  int march_steps = 0;
  double min() const;
  double max() const;
};

// Damped Newton from the spatially uniform guess p0 (or a caller-supplied
// start), with an implicit-diffusion time march as fallback when a step
// stalls.  Requires rho1 < 0 (checked); iterates must stay in (0, 2M].
StationaryState stationary_state(const PeriodicCoefficient& a, const ReactionModel& r,
                                 const MeanSet& means, const PeriodicGrid& grid, double L,
                                 double initial_guess = 0.0);

struct SteadyRow {
  double L = 0.0;
  bool ok = false;
  std::string error;
  double p_min = 0.0;
  double p_max = 0.0;
  double sup_gap = 0.0;  // sup |p_L - p0|
};

std::vector<SteadyRow> stationary_sweep(const PeriodicCoefficient& a, const ReactionModel& r,
                                        const MeanSet& means, const PeriodicGrid& grid,
                                        const std::vector<double>& Ls, int threads = 0);

// Monotone profile U of the homogenized travelling front at speed c:
//   a_harm U'' - c U' + g(U) = 0,  U(-inf) = 0, U(+inf) = p0, U(0) = p0/2.
// The profile is the phase-plane orbit connecting (p0, 0) to (0, 0); it is
// integrated backward from the saddle at p0 (a stable direction of travel at
// both ends) and resampled on [-half_width, half_width] with the half level
// translated to the origin.  Both ends therefore carry the true asymptotic
// values -- O(e^{-r half_width}) on the left and p0 - O(e^{-|s| half_width})
// on the right -- rather than exact 0 and p0.  The reported residual is a
// step-halving error bound on the sampled orbit.
struct FrontProfile {
  std::vector<double> xs;
  std::vector<double> values;
  double c = 0.0;
  double p0 = 0.0;
  double residual = 0.0;
  double value_at(double x) const;  // linear interpolation, clamped tails
};

// half_width <= 0 selects 40 / sqrt(g'(0)/a_harm); n_points is the total node
// count across the interval (default 4096).  Fails below the minimal speed or
// when the computed profile is not monotone.
FrontProfile homogenized_front(const ReactionModel& r, const MeanSet& means, double c,
                               double half_width = 0.0, int n_points = 4096);

}  // namespace kpp
