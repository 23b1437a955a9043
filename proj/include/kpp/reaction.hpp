#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kpp/periodic.hpp"

namespace kpp {

// Reaction term f(y,s), 1-periodic in y, with its low-density growth rate
// mu(y) = d f/d s (y, 0) stored explicitly.  Built-in kinds keep f and its
// s-derivative in closed form; Custom takes callables (used by tests and by
// models that do not fit the two shipped families).
class ReactionModel {
public:
  enum class Kind { Logistic, Quadratic, Custom };

  // f(y,s) = mu(y) * s * (1 - s/s0); common zero at s0, saturation M = s0.
  static ReactionModel logistic(PeriodicCoefficient mu, double s0 = 1.0);
  // f(y,s) = mu(y) * s - s^2; saturation bound M supplied by the caller.
  static ReactionModel quadratic(PeriodicCoefficient mu, double M);
  static ReactionModel custom(std::function<double(double, double)> f,
                              std::function<double(double, double)> fs,
                              PeriodicCoefficient mu, double M,
                              std::optional<double> s0 = std::nullopt);

  double f(double y, double s) const;
  double fs(double y, double s) const;  // partial derivative in s
  const PeriodicCoefficient& mu() const { return mu_; }
  double M() const { return M_; }
  std::optional<double> s0() const { return s0_; }
  Kind kind() const { return kind_; }

  // Cell average g(s) = mean of f(.,s), composite trapezoid over quad_n nodes
  // (spectrally accurate for smooth periodic integrands).  Rejects s < 0.
  double g(double s, int quad_n = 256) const;
  double g_prime(double s, int quad_n = 256) const;

  // max |f| and max |f_s| over the validation lattice y x [0, 2M]; used for
  // residual scaling and explicit time-step bounds.
  double max_abs_f() const { return max_abs_f_; }
  double max_abs_fs() const { return max_abs_fs_; }

private:
  Kind kind_ = Kind::Custom;
  std::function<double(double, double)> f_;
  std::function<double(double, double)> fs_;
  PeriodicCoefficient mu_;
  double M_ = 1.0;
  std::optional<double> s0_;
  double max_abs_f_ = 0.0;
  double max_abs_fs_ = 0.0;

  void finish_setup();
};

// One line of the hypothesis report.  required == false marks the sign
// condition f >= 0 on (0,M): the homogenized stationary limit and the
// variational speed formula hold without it, so its failure is surfaced but
// does not block computations.
struct HypothesisCheck {
  std::string id;      // "ellipticity", "zero-at-0", "saturation", "positivity", "kpp-slope", "mean-growth"
  bool required = true;
  bool pass = false;
  std::string detail;  // violating sample point on failure
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass() const;
  bool required_pass() const;
  std::string to_string() const;
};

// Checks the structural hypotheses on (a, f) over a validation grid of at
// least grid_n points in y and a 64-point geometric ladder in s.
HypothesisReport validate_hypotheses(const PeriodicCoefficient& a, const ReactionModel& r,
                                     int grid_n = 1024);

// Unique positive zero of g on (0, 2M]: bracket scan plus bisection, refined
// until |g(p0)| < 1e-12 * max(1, g'(0)*M).  Fails when g has no sign change.
double find_p0(const ReactionModel& r, int quad_n = 256);

double arithmetic_mean(const PeriodicCoefficient& c, int quad_n = 4096);
// Harmonic mean (integral of 1/c)^-1; rejects any sampled c <= 0.
double harmonic_mean(const PeriodicCoefficient& c, int quad_n = 4096);

}  // namespace kpp
