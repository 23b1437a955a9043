#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpp/errors.hpp"
#include "kpp/preset.hpp"
#include "kpp/speed.hpp"

TEST_SUITE("speed") {

TEST_CASE("constant coefficients give the classical speed") {
  const auto p = kpp::builtin_preset("fisher-const");
  const kpp::PeriodicGrid grid(64);
  for (double L : {1.0, 0.25}) {
    const auto r = kpp::minimal_speed(p.a, p.reaction, p.means, grid, L);
    CHECK(std::fabs(r.c_star - 2.0) < 1e-8);
    CHECK(std::fabs(r.lambda_star - 1.0) < 1e-6);
    CHECK(r.bracket_lo < r.lambda_star);
    CHECK(r.bracket_hi > r.lambda_star);
    CHECK(r.evaluations > 0);
  }
}

TEST_CASE("joint scaling of diffusion and growth") {
  // Scaling both a and mu by kappa scales the twisted operator, hence k and
  // c*, by kappa and leaves the minimizer fixed.
  const double kappa = 4.0;
  const auto base = kpp::builtin_preset("cos-diffusion-05");
  const auto a_scaled =
      kpp::PeriodicCoefficient::series(kappa, {{1, kappa * 0.5, 0.0}}, kappa * 0.5, kappa * 1.5);
  const auto r_scaled =
      kpp::ReactionModel::logistic(kpp::PeriodicCoefficient::constant(kappa), 1.0);
  const auto means_scaled = kpp::compute_means(a_scaled, r_scaled);

  const kpp::PeriodicGrid grid(96);
  const auto s1 = kpp::minimal_speed(base.a, base.reaction, base.means, grid, 0.25);
  const auto s2 = kpp::minimal_speed(a_scaled, r_scaled, means_scaled, grid, 0.25);
  CHECK(std::fabs(s2.c_star - kappa * s1.c_star) < 1e-8 * kappa * s1.c_star);
  CHECK(std::fabs(s2.lambda_star - s1.lambda_star) < 1e-6 * s1.lambda_star);
}

TEST_CASE("the minimizer is a local minimum of k(lambda)/lambda") {
  const auto p = kpp::builtin_preset("cos-diffusion-05");
  const kpp::PeriodicGrid grid(96);
  const double L = 0.25;
  const auto r = kpp::minimal_speed(p.a, p.reaction, p.means, grid, L);
  for (double fac : {1.0 - 1e-3, 1.0 + 1e-3}) {
    const double lam = r.lambda_star * fac;
    const double h = kpp::k_of_lambda(p.a, p.reaction.mu(), grid, L, lam) / lam;
    CHECK(h >= r.c_star - 1e-9);
  }
}

TEST_CASE("homogenized speed from the frozen closed forms") {
  CHECK(std::fabs(kpp::homogenized_speed(kpp::builtin_preset("cos-diffusion-05").means) -
                  1.8612097182041991) < 1e-12);
  CHECK(std::fabs(kpp::homogenized_speed(kpp::builtin_preset("cos-diffusion-09").means) -
                  1.320439160815927) < 1e-12);
  CHECK(std::fabs(kpp::homogenized_speed(kpp::builtin_preset("fisher-const").means) - 2.0) <
        1e-12);
}

TEST_CASE("sweep rows, ellipticity floor, and the shrinking gap") {
  const auto p = kpp::builtin_preset("cos-diffusion-05");
  const kpp::PeriodicGrid grid(96);
  const std::vector<double> Ls = {1.0, 0.25, 1.0 / 16.0};
  const auto rows = kpp::speed_sweep(p.a, p.reaction, p.means, grid, Ls, 2);
  REQUIRE(rows.size() == 3);
  const double floor = 2.0 * std::sqrt(p.a.alpha1 * p.means.mu_arith);
  for (const auto& row : rows) {
    REQUIRE(row.ok);
    CHECK(row.error.empty());
    CHECK(row.result.c_star >= floor - 1e-6);
    CHECK(row.gap == doctest::Approx(row.result.c_star - row.c_hom).epsilon(1e-12));
    CHECK(row.gap > -1e-9);
  }
  CHECK(rows[2].gap < rows[0].gap);
}

}  // TEST_SUITE
