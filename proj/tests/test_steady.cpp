#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kpp/errors.hpp"
#include "kpp/preset.hpp"
#include "kpp/steady.hpp"

namespace {

double sup_diff(const std::vector<double>& u, const std::vector<double>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max(d, std::fabs(u[i] - v[i]));
  return d;
}

}  // namespace

TEST_SUITE("steady") {

TEST_CASE("constant coefficients settle on the common zero") {
  const auto p = kpp::builtin_preset("fisher-const");
  const kpp::PeriodicGrid grid(64);
  const auto st = kpp::stationary_state(p.a, p.reaction, p.means, grid, 0.5);
  CHECK(st.L == 0.5);
  CHECK(st.residual < 1e-9);
  for (double v : st.values) CHECK(std::fabs(v - 1.0) < 1e-12);
}

TEST_CASE("shared reaction zero pins the state at every period") {
  const auto p = kpp::builtin_preset("common-zero");
  const kpp::PeriodicGrid grid(128);
  for (double L : {1.0, 0.125}) {
    const auto st = kpp::stationary_state(p.a, p.reaction, p.means, grid, L);
    CHECK(st.min() > 0.0);
    for (double v : st.values) CHECK(std::fabs(v - 1.0) < 1e-10);
  }
}

TEST_CASE("oscillating growth flattens toward p0 as the period shrinks") {
  const auto p = kpp::builtin_preset("het-mu");
  const kpp::PeriodicGrid grid(256);
  const auto rows =
      kpp::stationary_sweep(p.a, p.reaction, p.means, grid, {0.125, 1.0 / 128.0}, 2);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    REQUIRE(row.ok);
    CHECK(row.p_min > 0.0);
  }
  CHECK(rows[1].sup_gap < 0.25 * rows[0].sup_gap);
}

TEST_CASE("newton starts agree on the unique state") {
  const kpp::PeriodicGrid grid(128);
  for (const char* name : {"het-mu", "cos-diffusion-05"}) {
    const auto p = kpp::builtin_preset(name);
    const double L = 1.0 / 16.0;
    const double p0 = p.means.p0;
    const double M = p.reaction.M();
    std::vector<std::vector<double>> states;
    for (double start : {0.5 * p0, p0, std::min(1.5 * p0, M)}) {
      states.push_back(kpp::stationary_state(p.a, p.reaction, p.means, grid, L, start).values);
    }
    CHECK(sup_diff(states[0], states[1]) < 1e-8);
    CHECK(sup_diff(states[1], states[2]) < 1e-8);
  }
}

TEST_CASE("non-invadable zero state is rejected") {
  const auto a = kpp::PeriodicCoefficient::constant(1.0, 1.0, 1.0);
  const auto r = kpp::ReactionModel::quadratic(kpp::PeriodicCoefficient::constant(-0.5), 1.0);
  kpp::MeanSet means;
  means.a_arith = means.a_harm = 1.0;
  means.mu_arith = -0.5;
  means.p0 = 0.5;
  const kpp::PeriodicGrid grid(64);
  try {
    kpp::stationary_state(a, r, means, grid, 1.0);
    CHECK(false);
  } catch (const kpp::Error& e) {
    CHECK(e.code() == kpp::ErrorCode::Hypothesis);
  }

  const auto rows = kpp::stationary_sweep(a, r, means, grid, {1.0, 0.5}, 1);
  for (const auto& row : rows) {
    CHECK_FALSE(row.ok);
    CHECK_FALSE(row.error.empty());
  }
}

TEST_CASE("front profile at the minimal homogenized speed") {
  const auto p = kpp::builtin_preset("fisher-const");
  const auto fp = kpp::homogenized_front(p.reaction, p.means, 2.0);
  CHECK(fp.c == 2.0);
  CHECK(fp.p0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fp.residual < 1e-9);

  const std::size_t mid = (fp.xs.size() - 1) / 2;
  CHECK(fp.xs[mid] == 0.0);
  CHECK(std::fabs(fp.values[mid] - 0.5) < 1e-12);
  // the ends carry the true asymptotic values, not exact 0 and p0
  CHECK(fp.values.front() >= 0.0);
  CHECK(fp.values.front() < 1e-12);
  CHECK(std::fabs(fp.values.back() - 1.0) < 1e-6);
  for (std::size_t i = 1; i < fp.values.size(); ++i)
    CHECK(fp.values[i] >= fp.values[i - 1] - 1e-12);
}

TEST_CASE("supercritical profile decays at the slow rate") {
  // c = 2.5, A = 1, g'(0) = 1: the decay exponents solve r^2 - 2.5 r + 1 = 0,
  // so the selected (slow) rate is exactly 0.5.
  const auto p = kpp::builtin_preset("fisher-const");
  const auto fp = kpp::homogenized_front(p.reaction, p.means, 2.5);
  CHECK(fp.residual < 1e-9);

  std::vector<double> xs, ls;
  for (std::size_t i = 0; i + 1 < fp.xs.size() / 2; ++i) {
    if (fp.values[i] > 1e-7 * fp.p0 && fp.values[i] < 1e-5 * fp.p0) {
      xs.push_back(fp.xs[i]);
      ls.push_back(std::log(fp.values[i]));
    }
  }
  REQUIRE(xs.size() >= 4);
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ls[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ls[i];
  }
  const double rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(std::fabs(rate - 0.5) < 0.015);
}

TEST_CASE("subcritical speeds admit no monotone connection") {
  const auto p = kpp::builtin_preset("fisher-const");
  try {
    kpp::homogenized_front(p.reaction, p.means, 1.0);
    CHECK(false);
  } catch (const kpp::Error& e) {
    CHECK(e.code() == kpp::ErrorCode::InvalidArgument);
  }
}

TEST_CASE("profile sampling clamps and interpolates") {
  const auto p = kpp::builtin_preset("fisher-const");
  const auto fp = kpp::homogenized_front(p.reaction, p.means, 2.0, 30.0, 10);
  CHECK(fp.xs.size() == 129);  // node count is forced odd and at least 129
  CHECK(fp.value_at(fp.xs.front() - 5.0) == fp.values.front());
  CHECK(fp.value_at(fp.xs.back() + 5.0) == fp.values.back());
  const double xm = 0.5 * (fp.xs[40] + fp.xs[41]);
  CHECK(fp.value_at(xm) == doctest::Approx(0.5 * (fp.values[40] + fp.values[41])).epsilon(1e-12));

  const auto fp2 = kpp::homogenized_front(p.reaction, p.means, 2.0, 30.0, 200);
  CHECK(fp2.xs.size() == 201);
}

}  // TEST_SUITE
