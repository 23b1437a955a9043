#include "kpp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpp/errors.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

namespace {

// Perron root and vector of an essentially nonnegative cyclic three-diagonal
// matrix.  Collatz-Wielandt: any positive v gives
//   min_i (Bv)_i/v_i <= k_1 <= max_i (Bv)_i/v_i,
// and inverse iteration with shift s > k_1 keeps v positive because sI - B is
// then a nonsingular M-matrix.  Holding s a fraction of the bracket width
// above the upper bound tightens the bracket superlinearly; the Rayleigh
// quotient, clamped into the final bracket, is the returned eigenvalue.
EigenPair perron_max(const OperatorMatrix& B, double tol, int max_iter) {
  const int n = B.n();
  for (int i = 0; i < n; ++i) {
    if (B.sub(i) < 0.0 || B.sup(i) < 0.0)
      fail(ErrorCode::Numeric,
           "operator lost its positivity structure: grid too coarse for this lambda and L");
  }

  std::vector<double> v(n, 1.0);
  std::vector<double> Bv = B.apply(v);
  double upper = *std::max_element(Bv.begin(), Bv.end());
  double lower = *std::min_element(Bv.begin(), Bv.end());

  // The ratios (Bv)_i/v_i carry rounding noise of order eps * |B|_inf (the
  // flux products cancel down to an O(k_1) result), so the bracket cannot
  // tighten below that scale; the stop test gets the matching floor and a
  // stall guard, and the residual certificate below remains the hard gate.
  const double width_floor = tol * std::max(1.0, std::fabs(upper)) +
                             32.0 * std::numeric_limits<double>::epsilon() * B.inf_norm();
  double best_width = upper - lower;
  int stalled = 0;

  std::vector<double> sub(n), dia(n), sup(n);
  int it = 0;
  while (upper - lower > width_floor && stalled < 12) {
    if (++it > max_iter) fail(ErrorCode::Numeric, "eigensolver hit the iteration cap");
    const double shift =
        upper + std::max(0.05 * (upper - lower), 1e-13 * std::max(1.0, std::fabs(upper)));
    for (int i = 0; i < n; ++i) {
      sub[i] = -B.sub(i);
      dia[i] = shift - B.diag(i);
      sup[i] = -B.sup(i);
    }
    v = cyclic_solve(sub, dia, sup, v);

    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::fabs(x));
    if (!(vmax > 0.0) || !std::isfinite(vmax))
      fail(ErrorCode::Numeric, "eigensolver produced a degenerate iterate");
    for (double& x : v) x /= vmax;

    B.apply(v, Bv);
    double up = -1e300, lo = 1e300;
    for (int i = 0; i < n; ++i) {
      if (!(v[i] > 0.0)) fail(ErrorCode::Numeric, "eigenvector iterate lost positivity");
      const double r = Bv[i] / v[i];
      up = std::max(up, r);
      lo = std::min(lo, r);
    }
    upper = up;
    lower = lo;
    if (upper - lower < 0.5 * best_width) {
      best_width = upper - lower;
      stalled = 0;
    } else {
      ++stalled;
    }
  }

  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += v[i] * Bv[i];
    den += v[i] * v[i];
  }
  EigenPair p;
  p.value = std::clamp(num / den, lower, upper);
  p.iterations = it;

  double res = 0.0;
  for (int i = 0; i < n; ++i) res = std::max(res, std::fabs(Bv[i] - p.value * v[i]));
  p.residual = res;
  if (res > 1e-9 * B.inf_norm())
    fail(ErrorCode::Numeric, "eigenpair residual above certification threshold");
  p.eigenfunction = std::move(v);
  return p;
}

}  // namespace

EigenPair principal_eigenpair(const OperatorMatrix& A, Sense sense, double tol, int max_iter) {
  if (sense == Sense::Max) return perron_max(A, tol, max_iter);
  EigenPair p = perron_max(A.negated(), tol, max_iter);
  p.value = -p.value;
  return p;
}

double rho1(const PeriodicCoefficient& a, const PeriodicCoefficient& mu, const PeriodicGrid& grid,
            double L) {
  const OperatorMatrix A = assemble_linearized(a, mu, grid, L);
  return principal_eigenpair(A, Sense::Min).value;
}

double k_of_lambda(const PeriodicCoefficient& a, const PeriodicCoefficient& mu,
                   const PeriodicGrid& grid, double L, double lambda) {
  const OperatorMatrix A = assemble_lambda_operator(a, mu, grid, L, lambda);
  return principal_eigenpair(A, Sense::Max).value;
}

}  // namespace kpp
