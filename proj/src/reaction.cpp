#include "kpp/reaction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kpp/errors.hpp"

namespace kpp {

namespace {

std::string point_str(double y, double s, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "y=%.6g s=%.6g value=%.6g", y, s, v);
  return buf;
}

// 64 sample heights accumulating geometrically toward 0 so the small-s regime
// (where f/s approaches mu) is covered, plus a linear sweep up to the cap.
std::vector<double> s_ladder(double cap) {
  std::vector<double> s;
  double v = cap;
  for (int i = 0; i < 32; ++i) {
    s.push_back(v);
    v *= 0.5;
  }
  for (int i = 1; i <= 32; ++i) s.push_back(cap * i / 32.0);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

ReactionModel ReactionModel::logistic(PeriodicCoefficient mu, double s0) {
  if (s0 <= 0.0) fail(ErrorCode::InvalidArgument, "logistic reaction needs s0 > 0");
  ReactionModel r;
  r.kind_ = Kind::Logistic;
  r.mu_ = std::move(mu);
  r.s0_ = s0;
  r.M_ = s0;
  r.finish_setup();
  return r;
}

ReactionModel ReactionModel::quadratic(PeriodicCoefficient mu, double M) {
  if (M <= 0.0) fail(ErrorCode::InvalidArgument, "quadratic reaction needs M > 0");
  ReactionModel r;
  r.kind_ = Kind::Quadratic;
  r.mu_ = std::move(mu);
  r.M_ = M;
  r.finish_setup();
  return r;
}

ReactionModel ReactionModel::custom(std::function<double(double, double)> f,
                                    std::function<double(double, double)> fs,
                                    PeriodicCoefficient mu, double M,
                                    std::optional<double> s0) {
  if (!f) fail(ErrorCode::InvalidArgument, "custom reaction needs f");
  if (M <= 0.0) fail(ErrorCode::InvalidArgument, "custom reaction needs M > 0");
  ReactionModel r;
  r.kind_ = Kind::Custom;
  r.f_ = std::move(f);
  r.fs_ = std::move(fs);
  r.mu_ = std::move(mu);
  r.M_ = M;
  r.s0_ = s0;
  r.finish_setup();
  return r;
}

void ReactionModel::finish_setup() {
  double mf = 0.0, mfs = 0.0;
  const int ny = 257;
  const int ns = 65;
  for (int i = 0; i < ny; ++i) {
    const double y = static_cast<double>(i) / ny;
    for (int j = 0; j <= ns; ++j) {
      const double s = 2.0 * M_ * j / ns;
      mf = std::max(mf, std::fabs(f(y, s)));
      mfs = std::max(mfs, std::fabs(fs(y, s)));
    }
  }
  max_abs_f_ = mf;
  max_abs_fs_ = mfs;
}

double ReactionModel::f(double y, double s) const {
  switch (kind_) {
    case Kind::Logistic:
      return mu_.value(y) * s * (1.0 - s / *s0_);
    case Kind::Quadratic:
      return mu_.value(y) * s - s * s;
    case Kind::Custom:
      return f_(y, s);
  }
  return 0.0;
}

double ReactionModel::fs(double y, double s) const {
  switch (kind_) {
    case Kind::Logistic:
      return mu_.value(y) * (1.0 - 2.0 * s / *s0_);
    case Kind::Quadratic:
      return mu_.value(y) - 2.0 * s;
    case Kind::Custom:
      break;
  }
  if (fs_) return fs_(y, s);
  const double d = 1e-6 * std::max(1.0, std::fabs(s));
  return (f_(y, s + d) - f_(y, std::max(0.0, s - d))) / (s - d < 0.0 ? s + d : 2.0 * d);
}

double ReactionModel::g(double s, int quad_n) const {
  if (s < 0.0) fail(ErrorCode::InvalidArgument, "g(s) is defined for s >= 0");
  double acc = 0.0;
  for (int i = 0; i < quad_n; ++i) acc += f(static_cast<double>(i) / quad_n, s);
  return acc / quad_n;
}

double ReactionModel::g_prime(double s, int quad_n) const {
  double acc = 0.0;
  for (int i = 0; i < quad_n; ++i) acc += fs(static_cast<double>(i) / quad_n, s);
  return acc / quad_n;
}

bool HypothesisReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

bool HypothesisReport::required_pass() const {
  for (const auto& c : checks)
    if (c.required && !c.pass) return false;
  return true;
}

std::string HypothesisReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.pass ? "  [pass] " : "  [FAIL] ";
    out += c.id;
    if (!c.pass && !c.detail.empty()) out += "  (" + c.detail + ")";
    if (!c.pass && !c.required) out += "  [informational]";
    out += "\n";
  }
  return out;
}

HypothesisReport validate_hypotheses(const PeriodicCoefficient& a, const ReactionModel& r,
                                     int grid_n) {
  if (grid_n < 1024) grid_n = 1024;
  HypothesisReport rep;
  const double M = r.M();

  // Uniform ellipticity: declared bounds sane and respected by samples.
  {
    HypothesisCheck c{"ellipticity", true, true, ""};
    if (!(a.alpha1 > 0.0) || !(a.alpha2 >= a.alpha1)) {
      c.pass = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "declared bounds alpha1=%.6g alpha2=%.6g", a.alpha1, a.alpha2);
      c.detail = buf;
    } else {
      for (int i = 0; i < grid_n; ++i) {
        const double y = static_cast<double>(i) / grid_n;
        const double v = a.value(y);
        if (v < a.alpha1 - 1e-12 || v > a.alpha2 + 1e-12) {
          c.pass = false;
          c.detail = point_str(y, 0.0, v);
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }

  const auto ladder = s_ladder(M);

  // f(y,0) = 0.
  {
    HypothesisCheck c{"zero-at-0", true, true, ""};
    for (int i = 0; i < grid_n; ++i) {
      const double y = static_cast<double>(i) / grid_n;
      const double v = r.f(y, 0.0);
      if (std::fabs(v) > 1e-12 * std::max(1.0, r.max_abs_f())) {
        c.pass = false;
        c.detail = point_str(y, 0.0, v);
        break;
      }
    }
    rep.checks.push_back(c);
  }

  // Saturation: f(y,s) <= 0 on [M, 2M].
  {
    HypothesisCheck c{"saturation", true, true, ""};
    const double tol = 1e-12 * std::max(1.0, r.max_abs_f());
    for (int i = 0; i < grid_n && c.pass; ++i) {
      const double y = static_cast<double>(i) / grid_n;
      for (int j = 0; j <= 16; ++j) {
        const double s = M + M * j / 16.0;
        const double v = r.f(y, s);
        if (v > tol) {
          c.pass = false;
          c.detail = point_str(y, s, v);
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }

  // Sign condition f >= 0 on (0,M).  Informational: growth may be negative on
  // unfavorable parts of the cell as long as the mean growth rate stays
  // positive, and every downstream computation here survives that.
  {
    HypothesisCheck c{"positivity", false, true, ""};
    const double tol = 1e-12 * std::max(1.0, r.max_abs_f());
    for (int i = 0; i < grid_n && c.pass; ++i) {
      const double y = static_cast<double>(i) / grid_n;
      for (double s : ladder) {
        if (s <= 0.0 || s >= M) continue;
        const double v = r.f(y, s);
        if (v < -tol) {
          c.pass = false;
          c.detail = point_str(y, s, v);
          break;
        }
      }
    }
    rep.checks.push_back(c);
  }

  // KPP slope condition: s -> f(y,s)/s strictly decreasing.
  {
    HypothesisCheck c{"kpp-slope", true, true, ""};
    for (int i = 0; i < 256 && c.pass; ++i) {
      const double y = static_cast<double>(i) / 256.0;
      double prev = 0.0;
      bool have_prev = false;
      for (double s : ladder) {
        if (s <= 0.0) continue;
        const double q = r.f(y, s) / s;
        if (have_prev && !(q < prev)) {
          c.pass = false;
          c.detail = point_str(y, s, q - prev);
          break;
        }
        prev = q;
        have_prev = true;
      }
    }
    rep.checks.push_back(c);
  }

  // Positive mean growth rate.
  {
    HypothesisCheck c{"mean-growth", true, true, ""};
    const double m = arithmetic_mean(r.mu());
    if (!(m > 0.0)) {
      c.pass = false;
      char buf[64];
      std::snprintf(buf, sizeof buf, "mean growth rate %.6g", m);
      c.detail = buf;
    }
    rep.checks.push_back(c);
  }

  return rep;
}

double find_p0(const ReactionModel& r, int quad_n) {
  const double M = r.M();
  const double scale = std::max(1.0, std::fabs(r.g_prime(0.0, quad_n)) * M);
  const double tol = 1e-12 * scale;

  // Scan a ladder on (0, 2M] for the sign change g > 0 -> g <= 0.
  const int steps = 128;
  double lo = 0.0, hi = 0.0;
  bool found = false;
  double prev_s = M * 1e-8;
  double prev_g = r.g(prev_s, quad_n);
  for (int i = 1; i <= steps; ++i) {
    const double s = 2.0 * M * i / steps;
    const double gs = r.g(s, quad_n);
    if (prev_g > 0.0 && gs <= 0.0) {
      lo = prev_s;
      hi = s;
      found = true;
      break;
    }
    prev_s = s;
    prev_g = gs;
  }
  if (!found) fail(ErrorCode::Numeric, "g has no sign change on (0, 2M]: no positive zero");

  double glo = r.g(lo, quad_n);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = r.g(mid, quad_n);
    if (std::fabs(gm) < tol) return mid;
    if ((glo > 0.0) == (gm > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-16 * M) break;
  }
  const double p0 = 0.5 * (lo + hi);
  if (std::fabs(r.g(p0, quad_n)) >= tol)
    fail(ErrorCode::Numeric, "bisection stalled before |g(p0)| reached tolerance");
  return p0;
}

double arithmetic_mean(const PeriodicCoefficient& c, int quad_n) {
  double acc = 0.0;
  for (int i = 0; i < quad_n; ++i) acc += c.value(static_cast<double>(i) / quad_n);
  return acc / quad_n;
}

double harmonic_mean(const PeriodicCoefficient& c, int quad_n) {
  double acc = 0.0;
  for (int i = 0; i < quad_n; ++i) {
    const double y = static_cast<double>(i) / quad_n;
    const double v = c.value(y);
    if (v <= 0.0) fail(ErrorCode::InvalidArgument, "harmonic mean needs a strictly positive coefficient");
    acc += 1.0 / v;
  }
  return quad_n / acc;
}

}  // namespace kpp
