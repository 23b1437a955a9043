#pragma once

#include <cmath>
#include <vector>

#include "kpp/errors.hpp"

namespace kpp {

// Tridiagonal solve with partial pivoting (one fill-in band).  sub[0] and
// sup[n-1] are ignored.  Overwrites x with the solution of T x = rhs.
inline void tridiag_solve(std::vector<double> sub, std::vector<double> diag,
                          std::vector<double> sup, std::vector<double>& x) {
  const int n = static_cast<int>(diag.size());
  if (n < 2) fail(ErrorCode::InvalidArgument, "tridiagonal solve needs n >= 2");
  std::vector<double> fill(n, 0.0);
  for (int i = 0; i < n - 1; ++i) {
    if (std::fabs(sub[i + 1]) > std::fabs(diag[i])) {
      std::swap(diag[i], sub[i + 1]);
      std::swap(sup[i], diag[i + 1]);
      if (i + 2 < n) std::swap(fill[i], sup[i + 1]);
      std::swap(x[i], x[i + 1]);
    }
    if (diag[i] == 0.0) fail(ErrorCode::Numeric, "singular tridiagonal system");
    const double m = sub[i + 1] / diag[i];
    diag[i + 1] -= m * sup[i];
    if (i + 2 < n) sup[i + 1] -= m * fill[i];
    x[i + 1] -= m * x[i];
  }
  if (diag[n - 1] == 0.0) fail(ErrorCode::Numeric, "singular tridiagonal system");
  x[n - 1] /= diag[n - 1];
  x[n - 2] = (x[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
  for (int i = n - 3; i >= 0; --i)
    x[i] = (x[i] - sup[i] * x[i + 1] - fill[i] * x[i + 2]) / diag[i];
}

// Cyclic tridiagonal solve via the rank-one corner correction.  sub[0] is the
// (0, n-1) entry and sup[n-1] the (n-1, 0) entry.  The diagonally dominant
// systems this library produces keep the unpivoted core sweep stable.
inline std::vector<double> cyclic_solve(const std::vector<double>& sub,
                                        const std::vector<double>& diag,
                                        const std::vector<double>& sup,
                                        const std::vector<double>& rhs) {
  const int n = static_cast<int>(diag.size());
  if (n < 3) fail(ErrorCode::InvalidArgument, "cyclic solve needs n >= 3");
  const double alpha = sub[0], beta = sup[n - 1];
  const double gamma = diag[0] != 0.0 ? -diag[0] : -1.0;

  std::vector<double> bb = diag;
  bb[0] = diag[0] - gamma;
  bb[n - 1] = diag[n - 1] - alpha * beta / gamma;

  auto thomas = [&](std::vector<double> b) {
    std::vector<double> d = bb;
    for (int i = 1; i < n; ++i) {
      if (d[i - 1] == 0.0) fail(ErrorCode::Numeric, "singular cyclic system");
      const double m = sub[i] / d[i - 1];
      d[i] -= m * sup[i - 1];
      b[i] -= m * b[i - 1];
    }
    if (d[n - 1] == 0.0) fail(ErrorCode::Numeric, "singular cyclic system");
    b[n - 1] /= d[n - 1];
    for (int i = n - 2; i >= 0; --i) b[i] = (b[i] - sup[i] * b[i + 1]) / d[i];
    return b;
  };

  std::vector<double> x = thomas(rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = beta;
  const std::vector<double> z = thomas(u);

  const double num = x[0] + alpha * x[n - 1] / gamma;
  const double den = 1.0 + z[0] + alpha * z[n - 1] / gamma;
  if (den == 0.0) fail(ErrorCode::Numeric, "singular cyclic system");
  const double fact = num / den;
  for (int i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace kpp
