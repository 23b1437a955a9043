#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpp/errors.hpp"
#include "kpp/periodic.hpp"
#include "kpp/tridiag.hpp"

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TEST_SUITE("periodic") {

TEST_CASE("constant coefficient") {
  const auto c = kpp::PeriodicCoefficient::constant(2.5, 2.5, 2.5);
  CHECK(c.is_constant());
  CHECK(c.value(0.0) == 2.5);
  CHECK(c.value(0.731) == 2.5);
  CHECK(c.mean() == 2.5);
  CHECK(c.alpha1 == 2.5);
}

TEST_CASE("series evaluation and wrapping") {
  std::vector<kpp::PeriodicCoefficient::Term> terms;
  terms.push_back({1, 0.5, 0.0});
  terms.push_back({2, 0.0, 0.25});
  const auto c = kpp::PeriodicCoefficient::series(1.0, terms, 0.25, 1.75);
  CHECK_FALSE(c.is_constant());
  CHECK(c.mean() == 1.0);
  for (double y : {0.0, 0.17, 0.5, 0.93}) {
    const double want = 1.0 + 0.5 * std::cos(kTwoPi * y) + 0.25 * std::sin(2.0 * kTwoPi * y);
    CHECK(std::fabs(c.value(y) - want) < 1e-14);
    CHECK(std::fabs(c.value(y + 3.0) - want) < 1e-13);
    CHECK(std::fabs(c.value(y - 2.0) - want) < 1e-13);
  }
}

TEST_CASE("trigonometric interpolation reproduces band-limited samples") {
  auto fn = [](double y) {
    return 1.0 + 0.5 * std::cos(kTwoPi * y) + 0.25 * std::sin(2.0 * kTwoPi * y);
  };
  const int n = 16;
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = fn(static_cast<double>(j) / n);
  const auto c = kpp::PeriodicCoefficient::samples(v, 0.25, 1.75);
  for (int q = 0; q < 997; ++q) {
    const double y = static_cast<double>(q) / 997.0;
    CHECK(std::fabs(c.value(y) - fn(y)) < 1e-12);
  }
  CHECK(std::fabs(c.mean() - 1.0) < 1e-13);
}

TEST_CASE("sample count guard") {
  CHECK_THROWS_AS(kpp::PeriodicCoefficient::samples({1.0, 2.0, 1.0}, 0.5, 2.0), kpp::Error);
}

TEST_CASE("unit-cell grid") {
  CHECK_THROWS_AS(kpp::PeriodicGrid(8), kpp::Error);
  const kpp::PeriodicGrid g(32);
  CHECK(g.n == 32);
  CHECK(g.h == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
  CHECK(g.node(8) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("tridiagonal solve against a known solution") {
  const int n = 6;
  std::vector<double> sub(n, -1.0), dia(n, 3.0), sup(n, -0.5);
  std::vector<double> x_true(n);
  for (int i = 0; i < n; ++i) x_true[i] = std::sin(1.0 + i);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = dia[i] * x_true[i];
    if (i > 0) rhs[i] += sub[i] * x_true[i - 1];
    if (i + 1 < n) rhs[i] += sup[i] * x_true[i + 1];
  }
  kpp::tridiag_solve(sub, dia, sup, rhs);
  for (int i = 0; i < n; ++i) CHECK(std::fabs(rhs[i] - x_true[i]) < 1e-13);
}

TEST_CASE("tridiagonal solve pivots through a zero diagonal") {
  // First pivot is zero; unpivoted elimination would divide by it.
  std::vector<double> sub = {0.0, 2.0, 1.0}, dia = {0.0, 1.0, 2.0}, sup = {1.0, 1.0, 0.0};
  std::vector<double> x_true = {1.0, -2.0, 3.0};
  std::vector<double> rhs = {x_true[1], 2.0 * x_true[0] + x_true[1] + x_true[2],
                             x_true[1] + 2.0 * x_true[2]};
  kpp::tridiag_solve(sub, dia, sup, rhs);
  for (int i = 0; i < 3; ++i) CHECK(std::fabs(rhs[i] - x_true[i]) < 1e-13);
}

TEST_CASE("cyclic solve closes the corner terms") {
  const int n = 7;
  std::vector<double> sub(n), dia(n), sup(n), x_true(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    sub[i] = -0.7 - 0.05 * i;
    sup[i] = -0.9 + 0.03 * i;
    dia[i] = 4.0 + 0.1 * i;
    x_true[i] = std::cos(0.5 + i);
  }
  for (int i = 0; i < n; ++i) {
    const int prev = (i + n - 1) % n, next = (i + 1) % n;
    rhs[i] = dia[i] * x_true[i] + sub[i] * x_true[prev] + sup[i] * x_true[next];
  }
  const auto x = kpp::cyclic_solve(sub, dia, sup, rhs);
  for (int i = 0; i < n; ++i) CHECK(std::fabs(x[i] - x_true[i]) < 1e-12);
}

}  // TEST_SUITE
