#pragma once

#include <string>
#include <vector>

namespace kpp {

// Scalar 1-periodic coefficient on the unit cell.  Two construction routes:
// an explicit trigonometric series, or uniform samples on [0,1) which are
// converted once to the interpolating series, so evaluation is a single code
// path.  Declared bounds alpha1/alpha2 are metadata certified separately by
// hypothesis validation, not enforced here.
class PeriodicCoefficient {
public:
  struct Term {
    int k = 0;          // wave number, k >= 1
    double cos_c = 0.0; // coefficient of cos(2*pi*k*y)
    double sin_c = 0.0; // coefficient of sin(2*pi*k*y)
  };

  PeriodicCoefficient() = default;

  static PeriodicCoefficient constant(double c, double alpha1 = 0.0, double alpha2 = 0.0);
  static PeriodicCoefficient series(double const_term, std::vector<Term> terms,
                                    double alpha1 = 0.0, double alpha2 = 0.0);
  // Trigonometric interpolation of n uniform samples v[j] = c(j/n), n >= 4.
  static PeriodicCoefficient samples(const std::vector<double>& v,
                                     double alpha1 = 0.0, double alpha2 = 0.0);

  double value(double y) const;  // y is wrapped into [0,1)
  double mean() const { return const_term_; }
  bool is_constant() const { return terms_.empty(); }

  double alpha1 = 0.0;  // declared positive lower bound
  double alpha2 = 0.0;  // declared upper bound

  const std::vector<Term>& terms() const { return terms_; }
  double const_term() const { return const_term_; }

private:
  double const_term_ = 0.0;
  std::vector<Term> terms_;
};

// Uniform periodic grid on the unit cell: nodes y_i = i*h, h = 1/n, n >= 16.
struct PeriodicGrid {
  explicit PeriodicGrid(int n_nodes = 256);
  int n;
  double h;
  double node(int i) const { return i * h; }
};

}  // namespace kpp
