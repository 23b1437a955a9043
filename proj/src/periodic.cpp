#include "kpp/periodic.hpp"

#include <cmath>

#include "kpp/errors.hpp"

namespace kpp {

PeriodicCoefficient PeriodicCoefficient::constant(double c, double alpha1, double alpha2) {
  return series(c, {}, alpha1, alpha2);
}

PeriodicCoefficient PeriodicCoefficient::series(double const_term, std::vector<Term> terms,
                                                double alpha1, double alpha2) {
  PeriodicCoefficient p;
  p.const_term_ = const_term;
  for (const Term& t : terms) {
    if (t.k < 1) fail(ErrorCode::InvalidArgument, "series term needs wave number k >= 1");
    if (t.cos_c != 0.0 || t.sin_c != 0.0) p.terms_.push_back(t);
  }
  p.alpha1 = alpha1;
  p.alpha2 = alpha2;
  return p;
}

PeriodicCoefficient PeriodicCoefficient::samples(const std::vector<double>& v,
                                                 double alpha1, double alpha2) {
  const int n = static_cast<int>(v.size());
  if (n < 4) fail(ErrorCode::InvalidArgument, "sampled coefficient needs at least 4 samples");

  // Real trigonometric interpolant: for even n the Nyquist mode carries a
  // half-weight cosine so the series reproduces the samples exactly.
  const double twopi = 2.0 * std::acos(-1.0);
  double mean = 0.0;
  for (double s : v) mean += s;
  mean /= n;

  std::vector<Term> terms;
  const int kmax = n / 2;
  for (int k = 1; k <= kmax; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < n; ++j) {
      const double ph = twopi * k * j / n;
      ac += v[j] * std::cos(ph);
      as += v[j] * std::sin(ph);
    }
    double wc = 2.0 / n, ws = 2.0 / n;
    if (2 * k == n) {
      wc = 1.0 / n;  // Nyquist
      ws = 0.0;
    }
    Term t;
    t.k = k;
    t.cos_c = wc * ac;
    t.sin_c = ws * as;
    const double drop = 1e-14 * (std::fabs(mean) + 1.0);
    if (std::fabs(t.cos_c) < drop) t.cos_c = 0.0;
    if (std::fabs(t.sin_c) < drop) t.sin_c = 0.0;
    if (t.cos_c != 0.0 || t.sin_c != 0.0) terms.push_back(t);
  }
  return series(mean, std::move(terms), alpha1, alpha2);
}

double PeriodicCoefficient::value(double y) const {
  y -= std::floor(y);  // wrap into [0,1); exact periodicity by construction
  double s = const_term_;
  const double twopi = 2.0 * std::acos(-1.0);
  for (const Term& t : terms_) {
    const double ph = twopi * t.k * y;
    s += t.cos_c * std::cos(ph) + t.sin_c * std::sin(ph);
  }
  return s;
}

PeriodicGrid::PeriodicGrid(int n_nodes) : n(n_nodes), h(1.0 / n_nodes) {
  if (n_nodes < 16) fail(ErrorCode::InvalidArgument, "unit-cell grid needs at least 16 nodes");
}

}  // namespace kpp
