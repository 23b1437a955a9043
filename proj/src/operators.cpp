#include "kpp/operators.hpp"

#include <cmath>

#include "kpp/errors.hpp"

namespace kpp {

OperatorMatrix::OperatorMatrix(int n, double flux_scale, std::vector<double> a_mid)
    : n_(n),
      flux_scale_(flux_scale),
      a_mid_(std::move(a_mid)),
      lo_(n, 0.0),
      di_(n, 0.0),
      up_(n, 0.0) {
  if (static_cast<int>(a_mid_.size()) != n)
    fail(ErrorCode::InvalidArgument, "midpoint coefficient array size mismatch");
}

void OperatorMatrix::apply(const std::vector<double>& u, std::vector<double>& out) const {
  const int n = n_;
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    const int ip = i + 1 == n ? 0 : i + 1;
    const int im = i == 0 ? n - 1 : i - 1;
    const double flux_r = a_plus(i) * (u[ip] - u[i]);
    const double flux_l = a_minus(i) * (u[i] - u[im]);
    out[i] = flux_scale_ * (flux_r - flux_l) + lo_[i] * u[im] + di_[i] * u[i] + up_[i] * u[ip];
  }
}

std::vector<double> OperatorMatrix::apply(const std::vector<double>& u) const {
  std::vector<double> out;
  apply(u, out);
  return out;
}

double OperatorMatrix::inf_norm() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double r = std::fabs(sub(i)) + std::fabs(diag(i)) + std::fabs(sup(i));
    m = std::max(m, r);
  }
  return m;
}

std::vector<double> OperatorMatrix::to_dense() const {
  std::vector<double> d(static_cast<size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const int ip = (i + 1) % n_;
    const int im = (i + n_ - 1) % n_;
    d[static_cast<size_t>(i) * n_ + im] += sub(i);
    d[static_cast<size_t>(i) * n_ + i] += diag(i);
    d[static_cast<size_t>(i) * n_ + ip] += sup(i);
  }
  return d;
}

OperatorMatrix OperatorMatrix::negated() const {
  OperatorMatrix m(n_, -flux_scale_, a_mid_);
  for (int i = 0; i < n_; ++i) {
    m.lo_[i] = -lo_[i];
    m.di_[i] = -di_[i];
    m.up_[i] = -up_[i];
  }
  return m;
}

namespace {

std::vector<double> midpoint_samples(const PeriodicCoefficient& a, const PeriodicGrid& g) {
  std::vector<double> mid(g.n);
  for (int i = 0; i < g.n; ++i) mid[i] = a.value((i + 0.5) * g.h);
  return mid;
}

}  // namespace

OperatorMatrix assemble_diffusion(const PeriodicCoefficient& a, const PeriodicGrid& grid,
                                  double L) {
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  const double scale = 1.0 / (L * L * grid.h * grid.h);
  return OperatorMatrix(grid.n, scale, midpoint_samples(a, grid));
}

OperatorMatrix assemble_linearized(const PeriodicCoefficient& a, const PeriodicCoefficient& mu,
                                   const PeriodicGrid& grid, double L) {
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  const double scale = -1.0 / (L * L * grid.h * grid.h);
  OperatorMatrix m(grid.n, scale, midpoint_samples(a, grid));
  for (int i = 0; i < grid.n; ++i) m.add_diag(i, -mu.value(i * grid.h));
  return m;
}

OperatorMatrix assemble_lambda_operator(const PeriodicCoefficient& a,
                                        const PeriodicCoefficient& mu, const PeriodicGrid& grid,
                                        double L, double lambda) {
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  if (lambda < 0.0) fail(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  const int n = grid.n;
  const double h = grid.h;
  const double scale = 1.0 / (L * L * h * h);
  OperatorMatrix m(n, scale, midpoint_samples(a, grid));

  std::vector<double> an(n);
  for (int i = 0; i < n; ++i) an[i] = a.value(i * h);

  // (a psi)' + a psi' at node i:
  //   [(a_{i+1} + a_i) psi_{i+1} - (a_{i-1} + a_i) psi_{i-1}] / (2h)
  const double adv = lambda / (L * 2.0 * h);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    const int im = (i + n - 1) % n;
    m.add_upper(i, adv * (an[ip] + an[i]));
    m.add_lower(i, -adv * (an[im] + an[i]));
    m.add_diag(i, lambda * lambda * an[i] + mu.value(i * h));
  }
  return m;
}

}  // namespace kpp
