#include "kpp/means.hpp"

#include <cmath>

#include "kpp/errors.hpp"

namespace kpp {

MeanSet compute_means(const PeriodicCoefficient& a, const ReactionModel& r, int quad_n) {
  MeanSet m;
  m.a_arith = arithmetic_mean(a, quad_n);
  m.a_harm = harmonic_mean(a, quad_n);
  m.mu_arith = arithmetic_mean(r.mu(), quad_n);
  if (!(m.mu_arith > 0.0))
    fail(ErrorCode::Hypothesis, "mean growth rate must be positive");
  if (m.a_harm > m.a_arith + 1e-12 * m.a_arith)
    fail(ErrorCode::Numeric, "harmonic mean exceeded arithmetic mean");
  m.p0 = find_p0(r, quad_n >= 256 ? 256 : quad_n);
  m.c_star_hom = 2.0 * std::sqrt(m.a_harm * m.mu_arith);
  return m;
}

}  // namespace kpp
