#pragma once

#include <string>
#include <vector>

#include "kpp/means.hpp"
#include "kpp/spectral.hpp"

namespace kpp {

// Minimal front speed at period L: c*(L) = min over lambda > 0 of
// k(lambda, L) / lambda.
struct SpeedResult {
  double c_star = 0.0;
  double lambda_star = 0.0;
  double L = 0.0;
  int evaluations = 0;        // eigenvalue solves spent
  double bracket_lo = 0.0;    // final minimizer bracket
  double bracket_hi = 0.0;
};

SpeedResult minimal_speed(const PeriodicCoefficient& a, const ReactionModel& r,
                          const MeanSet& means, const PeriodicGrid& grid, double L);

// Speed of the limiting homogeneous front, 2*sqrt(a_harm * mu_arith).
double homogenized_speed(const MeanSet& means);

struct SpeedRow {
  double L = 0.0;
  bool ok = false;
  std::string error;
  SpeedResult result;
  double c_hom = 0.0;
  double gap = 0.0;  // c_star - c_hom
};

// One row per requested period; failures are collected per row instead of
// aborting the sweep.  threads <= 0 uses the hardware count.
std::vector<SpeedRow> speed_sweep(const PeriodicCoefficient& a, const ReactionModel& r,
                                  const MeanSet& means, const PeriodicGrid& grid,
                                  const std::vector<double>& Ls, int threads = 0);

}  // namespace kpp
