#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpp/errors.hpp"
#include "kpp/preset.hpp"
#include "kpp/spectral.hpp"

#ifdef KPP_HAVE_EIGEN
#include <Eigen/Dense>
#endif

namespace {

kpp::PeriodicCoefficient cos_a() {
  return kpp::PeriodicCoefficient::series(1.0, {{1, 0.5, 0.0}}, 0.5, 1.5);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("constant coefficients have a constant eigenfunction") {
  const kpp::PeriodicGrid grid(64);
  const auto a = kpp::PeriodicCoefficient::constant(2.0, 2.0, 2.0);
  const auto mu = kpp::PeriodicCoefficient::constant(0.7);

  // Flux differences vanish on constants, so the discrete value is exact.
  CHECK(std::fabs(kpp::rho1(a, mu, grid, 0.25) + 0.7) < 1e-12);
  const double lam = 0.8;
  CHECK(std::fabs(kpp::k_of_lambda(a, mu, grid, 1.0, lam) - (2.0 * lam * lam + 0.7)) < 1e-11);
}

TEST_CASE("k at lambda zero is minus the principal eigenvalue") {
  const kpp::PeriodicGrid grid(128);
  for (const auto& name : kpp::builtin_preset_names()) {
    const auto p = kpp::builtin_preset(name);
    for (double L : {1.0, 0.125}) {
      const double r = kpp::rho1(p.a, p.reaction.mu(), grid, L);
      const double k0 = kpp::k_of_lambda(p.a, p.reaction.mu(), grid, L, 0.0);
      CHECK(k0 == -r);  // same matrix, same solve
    }
  }
}

TEST_CASE("eigenpair is positive, normalized, and certified") {
  const kpp::PeriodicGrid grid(96);
  const auto p = kpp::builtin_preset("cos-diffusion-05");
  const auto A = kpp::assemble_lambda_operator(p.a, p.reaction.mu(), grid, 0.25, 0.9);
  const auto pair = kpp::principal_eigenpair(A, kpp::Sense::Max);
  REQUIRE(pair.eigenfunction.size() == 96);
  double vmax = 0.0;
  for (double v : pair.eigenfunction) {
    CHECK(v > 0.0);
    vmax = std::max(vmax, v);
  }
  CHECK(vmax == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair.residual <= 1e-9 * A.inf_norm());
  CHECK(pair.iterations > 0);
}

TEST_CASE("principal eigenvalue approaches the negated mean growth") {
  const kpp::PeriodicGrid grid(256);
  const auto p = kpp::builtin_preset("het-mu");
  const double r64 = kpp::rho1(p.a, p.reaction.mu(), grid, 1.0 / 64.0);
  const double r8 = kpp::rho1(p.a, p.reaction.mu(), grid, 1.0 / 8.0);
  CHECK(std::fabs(r64 + 1.0) < 2e-2);
  CHECK(std::fabs(r64 + 1.0) < 0.25 * std::fabs(r8 + 1.0));
}

TEST_CASE("coarse grids are rejected rather than mis-solved") {
  const kpp::PeriodicGrid grid(16);
  CHECK_THROWS_AS(
      kpp::k_of_lambda(cos_a(), kpp::PeriodicCoefficient::constant(1.0), grid, 1.0, 60.0),
      kpp::Error);
}

#ifdef KPP_HAVE_EIGEN
TEST_CASE("dense eigensolver agrees on the Perron root") {
  const int n = 128;
  const kpp::PeriodicGrid grid(n);
  const auto p = kpp::builtin_preset("cos-diffusion-05");

  const auto B = kpp::assemble_lambda_operator(p.a, p.reaction.mu(), grid, 0.25, 0.8);
  const double k = kpp::k_of_lambda(p.a, p.reaction.mu(), grid, 0.25, 0.8);
  Eigen::MatrixXd M(n, n);
  const auto dense = B.to_dense();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = dense[static_cast<size_t>(i) * n + j];
  const Eigen::VectorXcd ev = M.eigenvalues();
  double kmax = -1e300;
  for (int i = 0; i < n; ++i) kmax = std::max(kmax, ev[i].real());
  CHECK(std::fabs(k - kmax) < 1e-8);

  const auto A = kpp::assemble_linearized(p.a, p.reaction.mu(), grid, 0.25);
  const double r1 = kpp::rho1(p.a, p.reaction.mu(), grid, 0.25);
  const auto dense2 = A.to_dense();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = dense2[static_cast<size_t>(i) * n + j];
  const Eigen::VectorXcd ev2 = M.eigenvalues();
  double rmin = 1e300;
  for (int i = 0; i < n; ++i) rmin = std::min(rmin, ev2[i].real());
  CHECK(std::fabs(r1 - rmin) < 1e-8);
}
#endif

}  // TEST_SUITE
