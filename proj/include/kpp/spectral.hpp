#pragma once

#include <vector>

#include "kpp/operators.hpp"

namespace kpp {

enum class Sense { Max, Min };

// Principal eigenpair: strictly positive eigenfunction normalized to sup-norm
// one, eigenvalue bracketed by Collatz-Wielandt bounds at the convergence
// tolerance, residual certified against 1e-9 * |A|_inf.
struct EigenPair {
  double value = 0.0;
  std::vector<double> eigenfunction;
  double residual = 0.0;
  int iterations = 0;
};

// Perron pair of the cyclic three-diagonal operator A.  Sense::Max needs the
// off-diagonal entries of A nonnegative, Sense::Min the same for -A; both are
// checked and a violation reports the grid as too coarse for the requested
// twist.  Deterministic all-ones start; inverse iteration with the shift held
// strictly above the running upper bound, so iterates stay positive.
EigenPair principal_eigenpair(const OperatorMatrix& A, Sense sense, double tol = 1e-11,
                              int max_iter = 100000);

// Principal eigenvalue of -(1/L^2)(a phi')' - mu phi on the unit cell.
// Negative exactly when mean growth wins over the period; tends to the
// negated mean growth rate as L -> 0.
double rho1(const PeriodicCoefficient& a, const PeriodicCoefficient& mu, const PeriodicGrid& grid,
            double L);

// Largest eigenvalue k(lambda, L) of the twisted cell operator.
double k_of_lambda(const PeriodicCoefficient& a, const PeriodicCoefficient& mu,
                   const PeriodicGrid& grid, double L, double lambda);

}  // namespace kpp
