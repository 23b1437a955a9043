#pragma once

#include "kpp/reaction.hpp"

namespace kpp {

// Cell averages that drive the small-period limits: arithmetic and harmonic
// means of the diffusion, mean growth rate, positive zero p0 of g, and the
// limiting front speed 2*sqrt(a_harm * mu_arith).
struct MeanSet {
  double a_arith = 0.0;
  double a_harm = 0.0;
  double mu_arith = 0.0;
  double p0 = 0.0;
  double c_star_hom = 0.0;
};

MeanSet compute_means(const PeriodicCoefficient& a, const ReactionModel& r, int quad_n = 4096);

}  // namespace kpp
