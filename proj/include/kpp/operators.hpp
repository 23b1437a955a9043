#pragma once

#include <vector>

#include "kpp/periodic.hpp"
#include "kpp/reaction.hpp"

namespace kpp {

// Cyclic three-diagonal operator on the unit cell.  The diffusion block is
// kept in flux form (midpoint coefficients, applied as telescoping flux
// differences) so constants are annihilated exactly, bit for bit; advection
// and potential terms live in plain bands.  Effective band entries are
// available for solvers that need them.
class OperatorMatrix {
public:
  OperatorMatrix(int n, double flux_scale, std::vector<double> a_mid);

  int n() const { return n_; }

  void apply(const std::vector<double>& u, std::vector<double>& out) const;
  std::vector<double> apply(const std::vector<double>& u) const;

  // Effective entries of row i: (i,i-1), (i,i), (i,i+1), indices cyclic.
  double sub(int i) const { return flux_scale_ * a_minus(i) + lo_[i]; }
  double diag(int i) const { return -flux_scale_ * (a_plus(i) + a_minus(i)) + di_[i]; }
  double sup(int i) const { return flux_scale_ * a_plus(i) + up_[i]; }

  double inf_norm() const;
  std::vector<double> to_dense() const;  // row-major n*n, for small-n oracles
  OperatorMatrix negated() const;

  // Band modifiers used by the assemblers.
  void add_lower(int i, double v) { lo_[i] += v; }
  void add_diag(int i, double v) { di_[i] += v; }
  void add_upper(int i, double v) { up_[i] += v; }

private:
  double a_plus(int i) const { return a_mid_[i]; }
  double a_minus(int i) const { return a_mid_[(i + n_ - 1) % n_]; }

  int n_;
  double flux_scale_;            // +-1/(L^2 h^2); sign carries the operator orientation
  std::vector<double> a_mid_;    // a at y_i + h/2
  std::vector<double> lo_, di_, up_;
};

// (1/L^2) d/dy ( a(y) d/dy )  in conservative flux form.  Rejects L <= 0.
OperatorMatrix assemble_diffusion(const PeriodicCoefficient& a, const PeriodicGrid& grid, double L);

// -(1/L^2)(a u')' - mu(y) u : the linearization around the zero state.
OperatorMatrix assemble_linearized(const PeriodicCoefficient& a, const PeriodicCoefficient& mu,
                                   const PeriodicGrid& grid, double L);

// Exponentially twisted cell operator
//   (1/L^2)(a psi')' + (lambda/L)[(a psi)' + a psi'] + lambda^2 a psi + mu psi,
// centered differences for the first-order block; no derivative of a is
// sampled.  Rejects lambda < 0; at lambda = 0 it equals the negated
// linearized operator entry for entry.
OperatorMatrix assemble_lambda_operator(const PeriodicCoefficient& a, const PeriodicCoefficient& mu,
                                        const PeriodicGrid& grid, double L, double lambda);

}  // namespace kpp
