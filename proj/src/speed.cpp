#include "kpp/speed.hpp"

#include <cmath>

#include "kpp/errors.hpp"
#include "kpp/parallel.hpp"

namespace kpp {

namespace {

constexpr double kLambdaMin = 1e-4;
constexpr double kLambdaMax = 1e4;

struct Objective {
  const PeriodicCoefficient& a;
  const PeriodicCoefficient& mu;
  const PeriodicGrid& grid;
  double L;
  mutable int evals = 0;

  double operator()(double lambda) const {
    ++evals;
    return k_of_lambda(a, mu, grid, L, lambda) / lambda;
  }
};

struct Bracket {
  double a, b, c;    // a < b < c with f(b) below both ends
  double fa, fb, fc;
};

// Geometric expansion around x0 until the middle point is a strict interior
// minimum of the triple.  The objective is smooth, goes to +infinity at both
// ends of the admissible window, and has one interior minimum.
Bracket expand_bracket(const Objective& f, double x0) {
  const double ratio = 1.8;
  double b = x0, fb = f(b);
  double a = b / ratio, fa = f(a);
  double c = b * ratio, fc = f(c);
  for (int it = 0; it < 200; ++it) {
    if (fb <= fa && fb <= fc) return {a, b, c, fa, fb, fc};
    if (fa < fc) {
      c = b; fc = fb;
      b = a; fb = fa;
      a = b / ratio;
      if (a < kLambdaMin) fail(ErrorCode::Numeric, "no interior minimum above the lambda floor");
      fa = f(a);
    } else {
      a = b; fa = fb;
      b = c; fb = fc;
      c = b * ratio;
      if (c > kLambdaMax) fail(ErrorCode::Numeric, "no interior minimum below the lambda cap");
      fc = f(c);
    }
  }
  fail(ErrorCode::Numeric, "bracket expansion did not close");
}

// Golden-section with parabolic interpolation steps (Brent).  Relative x
// tolerance; the objective is evaluated through the eigenvalue solver, so
// each call is deterministic.
double brent_min(const Objective& f, const Bracket& br, double rel_tol, double* fmin,
                 double* out_lo, double* out_hi) {
  const double gold = 0.3819660112501051;
  double a = br.a, b = br.c;
  double x = br.b, w = br.b, v = br.b;
  double fx = br.fb, fw = br.fb, fv = br.fb;
  double d = 0.0, e = 0.0;

  for (int it = 0; it < 200; ++it) {
    const double xm = 0.5 * (a + b);
    const double tol1 = rel_tol * std::fabs(x) + 1e-14;
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool take_golden = true;
    if (std::fabs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double etemp = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        take_golden = false;
      }
    }
    if (take_golden) {
      e = x >= xm ? a - x : b - x;
      d = gold * e;
    }
    const double u = std::fabs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  *fmin = fx;
  *out_lo = a;
  *out_hi = b;
  return x;
}

}  // namespace

double homogenized_speed(const MeanSet& means) {
  if (!(means.a_harm > 0.0) || !(means.mu_arith > 0.0))
    fail(ErrorCode::InvalidArgument, "homogenized speed needs positive means");
  return 2.0 * std::sqrt(means.a_harm * means.mu_arith);
}

SpeedResult minimal_speed(const PeriodicCoefficient& a, const ReactionModel& r,
                          const MeanSet& means, const PeriodicGrid& grid, double L) {
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  Objective f{a, r.mu(), grid, L};

  // The homogeneous-medium minimizer is the natural starting scale.
  const double lambda0 = std::sqrt(means.mu_arith / means.a_harm);
  const Bracket br = expand_bracket(f, lambda0);

  SpeedResult res;
  res.L = L;
  double fmin = 0.0;
  res.lambda_star = brent_min(f, br, 1e-8, &fmin, &res.bracket_lo, &res.bracket_hi);
  // Flat-bottom tie break: when the refined bracket is narrow and the
  // objective no longer varies across it, the midpoint is the deterministic
  // representative.
  if (res.bracket_hi - res.bracket_lo < 1e-8 * res.lambda_star &&
      std::fabs(f(res.bracket_hi) - f(res.bracket_lo)) < 1e-12) {
    res.lambda_star = 0.5 * (res.bracket_lo + res.bracket_hi);
    fmin = f(res.lambda_star);
  }
  res.c_star = fmin;
  res.evaluations = f.evals;

  const double floor = 2.0 * std::sqrt(a.alpha1 * means.mu_arith) - 1e-6;
  if (a.alpha1 > 0.0 && res.c_star < floor)
    fail(ErrorCode::Numeric, "minimal speed fell below its ellipticity floor");
  return res;
}

std::vector<SpeedRow> speed_sweep(const PeriodicCoefficient& a, const ReactionModel& r,
                                  const MeanSet& means, const PeriodicGrid& grid,
                                  const std::vector<double>& Ls, int threads) {
  std::vector<SpeedRow> rows(Ls.size());
  const double c_hom = homogenized_speed(means);
  parallel_for_index(static_cast<int>(Ls.size()), threads, [&](int i) {
    SpeedRow& row = rows[i];
    row.L = Ls[i];
    row.c_hom = c_hom;
    try {
      row.result = minimal_speed(a, r, means, grid, Ls[i]);
      row.gap = row.result.c_star - c_hom;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace kpp
