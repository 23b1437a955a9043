#include "kpp/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpp/errors.hpp"
#include "kpp/operators.hpp"
#include "kpp/parallel.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

namespace {

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// F(p) = (1/L^2)(a p')' + f(y, p) at the cell nodes.
struct CellResidual {
  const ReactionModel& r;
  const PeriodicGrid& grid;
  const OperatorMatrix& D;

  void eval(const std::vector<double>& p, std::vector<double>& out) const {
    D.apply(p, out);
    for (int i = 0; i < grid.n; ++i) out[i] += r.f(grid.node(i), p[i]);
  }
};

// One implicit-diffusion, explicit-reaction march step: (I/dt - D) q = p/dt + f(p).
// The left-hand matrix is a strictly diagonally dominant M-matrix for any
// dt > 0, so the unpivoted cyclic sweep is stable and positivity of p
// persists whenever dt * max|f_s| < 1.
std::vector<double> march_step(const std::vector<double>& p, const CellResidual& F, double dt) {
  const int n = static_cast<int>(p.size());
  std::vector<double> sub(n), dia(n), sup(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    sub[i] = -F.D.sub(i);
    dia[i] = 1.0 / dt - F.D.diag(i);
    sup[i] = -F.D.sup(i);
    rhs[i] = p[i] / dt + F.r.f(F.grid.node(i), p[i]);
  }
  return cyclic_solve(sub, dia, sup, rhs);
}

}  // namespace

double StationaryState::min() const {
  return *std::min_element(values.begin(), values.end());
}

double StationaryState::max() const {
  return *std::max_element(values.begin(), values.end());
}

StationaryState stationary_state(const PeriodicCoefficient& a, const ReactionModel& r,
                                 const MeanSet& means, const PeriodicGrid& grid, double L,
                                 double initial_guess) {
  if (!(L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  const double rho = rho1(a, r.mu(), grid, L);
  if (rho >= 0.0)
    fail(ErrorCode::Hypothesis,
         "rho1(L) = " + std::to_string(rho) +
             " >= 0: the zero state is not invadable, no positive stationary state exists");

  const int n = grid.n;
  const double cap = 2.0 * r.M();
  const double start = initial_guess > 0.0 ? std::min(initial_guess, cap) : means.p0;
  const OperatorMatrix D = assemble_diffusion(a, grid, L);
  const CellResidual F{r, grid, D};
  const double tol = 1e-9 * std::max(1.0, r.max_abs_f());
  // At small L the diffusion entries reach ~1/(Lh)^2, so the residual of the
  // exact solution rounded to doubles sits at ~eps * |D| * p; no representable
  // state can evaluate below that line.  A stall under it is convergence.
  const double round_off_floor = 4.0 * std::numeric_limits<double>::epsilon() * D.inf_norm() *
                                 std::max(1.0, means.p0);
  const double march_dt = 0.25 / std::max(r.max_abs_fs(), 1e-12);

  StationaryState st;
  st.L = L;
  st.values.assign(n, start);

  std::vector<double> res(n), delta(n), trial(n), trial_res(n);
  F.eval(st.values, res);
  double res_norm = sup_norm(res);
  double best_res = res_norm;
  std::vector<double> best_values = st.values;

  auto in_box = [&](const std::vector<double>& v) {
    for (double x : v)
      if (!(x > 0.0) || x > cap) return false;
    return true;
  };

  for (int round = 0; round < 6 && res_norm >= tol; ++round) {
    // Damped Newton.  J = D + diag(f_s); near the solution f_s < 0 nodewise
    // keeps J strictly diagonally dominant, so the cyclic sweep is reliable
    // there; anywhere else a rejected or inaccurate step falls through to the
    // march below.
    bool stalled = false;
    while (st.newton_iterations < 200 && res_norm >= tol && !stalled) {
      ++st.newton_iterations;
      std::vector<double> sub(n), dia(n), sup(n), rhs(n);
      for (int i = 0; i < n; ++i) {
        sub[i] = D.sub(i);
        dia[i] = D.diag(i) + r.fs(grid.node(i), st.values[i]);
        sup[i] = D.sup(i);
        rhs[i] = -res[i];
      }
      bool solved = true;
      try {
        delta = cyclic_solve(sub, dia, sup, rhs);
      } catch (const Error&) {
        solved = false;
      }
      if (solved && !all_finite(delta)) solved = false;
      if (!solved) {
        stalled = true;
        break;
      }

      double t = 1.0;
      bool accepted = false;
      for (; t >= 1.0 / 1024.0; t *= 0.5) {
        for (int i = 0; i < n; ++i) trial[i] = st.values[i] + t * delta[i];
        if (!in_box(trial)) continue;
        F.eval(trial, trial_res);
        const double trial_norm = sup_norm(trial_res);
        if (std::isfinite(trial_norm) && trial_norm < (1.0 - 0.25 * t) * res_norm) {
          st.values.swap(trial);
          res.swap(trial_res);
          res_norm = trial_norm;
          if (res_norm < best_res) {
            best_res = res_norm;
            best_values = st.values;
          }
          accepted = true;
          break;
        }
      }
      if (!accepted) stalled = true;
    }
    if (res_norm < tol) break;

    // Newton stagnated: march the parabolic flow toward the attractor, then
    // hand back to Newton.
    for (int s = 0; s < 400 && res_norm >= tol; ++s) {
      ++st.march_steps;
      std::vector<double> next = march_step(st.values, F, march_dt);
      if (!all_finite(next) || !in_box(next))
        fail(ErrorCode::Numeric, "stationary iterate left (0, 2M]");
      st.values.swap(next);
      F.eval(st.values, res);
      res_norm = sup_norm(res);
      if (res_norm < best_res) {
        best_res = res_norm;
        best_values = st.values;
      }
    }
  }

  if (!(res_norm < tol)) {
    if (best_res <= round_off_floor) {
      st.values = std::move(best_values);
      res_norm = best_res;
    } else {
      fail(ErrorCode::Numeric,
           "stationary state did not reach its residual target (residual " +
               std::to_string(res_norm) + ")");
    }
  }
  st.residual = res_norm;

  const double upper = r.M() * (1.0 + 1e-10);
  for (int i = 0; i < n; ++i)
    if (!(st.values[i] > 0.0) || st.values[i] > upper)
      fail(ErrorCode::Numeric, "stationary state violates 0 < p <= M at a node");
  return st;
}

std::vector<SteadyRow> stationary_sweep(const PeriodicCoefficient& a, const ReactionModel& r,
                                        const MeanSet& means, const PeriodicGrid& grid,
                                        const std::vector<double>& Ls, int threads) {
  std::vector<SteadyRow> rows(Ls.size());
  parallel_for_index(static_cast<int>(Ls.size()), threads, [&](int i) {
    SteadyRow& row = rows[i];
    row.L = Ls[i];
    try {
      const StationaryState st = stationary_state(a, r, means, grid, Ls[i]);
      row.p_min = st.min();
      row.p_max = st.max();
      double gap = 0.0;
      for (double v : st.values) gap = std::max(gap, std::fabs(v - means.p0));
      row.sup_gap = gap;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return rows;
}

double FrontProfile::value_at(double x) const {
  if (x <= xs.front()) return values.front();
  if (x >= xs.back()) return values.back();
  const double hx = xs[1] - xs[0];
  const int i = std::min(static_cast<int>((x - xs.front()) / hx),
                         static_cast<int>(xs.size()) - 2);
  const double w = (x - xs[i]) / hx;
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

namespace {

// The profile solves the autonomous ODE A U'' - c U' + g(U) = 0, i.e. it is
// the orbit connecting the saddle (p0, 0) to the node (0, 0) in the (U, U')
// phase plane.  Backward integration from the saddle along its unstable
// manifold is unconditionally stable here (both equilibria attract in
// backward x), so the orbit is computed by a fixed-step RK4 shot and then
// resampled; the far tail inherits its true structure -- including the
// polynomial prefactor at the critical speed -- instead of being imposed by a
// boundary condition.
struct FrontShot {
  double x_half = 0.0;      // where the orbit crosses p0/2 (shot coordinates)
  double x_end = 0.0;       // last integrated point
  double u_end = 0.0;
  bool crossed = false;
};

struct HermiteStep {
  double x0, u0, v0, x1, u1, v1;  // x1 < x0: one backward step

  double eval(double x) const {
    const double h = x0 - x1;
    const double t = (x - x1) / h;  // 0 at x1, 1 at x0
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * u1 + (t3 - 2 * t2 + t) * h * v1 +
           (-2 * t3 + 3 * t2) * u0 + (t3 - t2) * h * v0;
  }
};

template <typename Rhs, typename OnStep>
FrontShot shoot(double p0, double delta, double s_minus, double h, double span_max,
                double floor_u, double need_left, const Rhs& rhs, const OnStep& on_step) {
  double x = 0.0, u = p0 - delta, v = -s_minus * delta;
  FrontShot shot;
  while (true) {
    double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
    rhs(u, v, k1u, k1v);
    rhs(u - 0.5 * h * k1u, v - 0.5 * h * k1v, k2u, k2v);
    rhs(u - 0.5 * h * k2u, v - 0.5 * h * k2v, k3u, k3v);
    rhs(u - h * k3u, v - h * k3v, k4u, k4v);
    HermiteStep st;
    st.x0 = x;
    st.u0 = u;
    st.v0 = v;
    u -= h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v -= h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    x -= h;
    st.x1 = x;
    st.u1 = u;
    st.v1 = v;
    if (!std::isfinite(u) || !std::isfinite(v))
      fail(ErrorCode::Numeric, "front profile integration blew up");
    if (!shot.crossed && u <= 0.5 * p0) {
      // bisect the cubic interpolant for the half-level crossing
      double lo = st.x1, hi = st.x0;
      for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (lo + hi);
        (st.eval(mid) <= 0.5 * p0 ? lo : hi) = mid;
      }
      shot.x_half = 0.5 * (lo + hi);
      shot.crossed = true;
    }
    on_step(st, shot);
    shot.x_end = x;
    shot.u_end = u;
    if (u < floor_u) break;
    if (shot.crossed && shot.x_half - x >= need_left) break;
    if (-x > span_max)
      fail(ErrorCode::Numeric,
           shot.crossed ? "front profile tail does not settle"
                        : "orbit never reaches the half level: no monotone connection");
  }
  return shot;
}

// One complete shot at step h: locate the half level, then re-run the same
// trajectory and sample it on the node set xs (front-centred) with cubic
// Hermite interpolation.  Nodes beyond the integrated span are filled from
// the local linearizations.
std::vector<double> shoot_profile(double A, double c, const ReactionModel& r, double p0,
                                  double delta, double s_minus, double r_minus, double h,
                                  double span_max, const std::vector<double>& xs) {
  auto rhs = [&](double U, double V, double& dU, double& dV) {
    dU = V;
    dV = (c * V - r.g(U)) / A;
  };
  const double floor_u = 1e-18 * p0;
  const double X = -xs.front();
  auto ignore = [](const HermiteStep&, const FrontShot&) {};
  const FrontShot scan = shoot(p0, delta, s_minus, h, span_max, floor_u, X + 2.0, rhs, ignore);
  if (!scan.crossed)
    fail(ErrorCode::Numeric, "orbit never reaches the half level: no monotone connection");

  const int n = static_cast<int>(xs.size());
  std::vector<double> us(n);
  int i = n - 1;
  // nodes to the right of the shot's starting point sit on the linear tail at p0
  while (i >= 0 && xs[i] + scan.x_half > 0.0) {
    us[i] = p0 - delta * std::exp(s_minus * (xs[i] + scan.x_half));
    --i;
  }
  // the re-run follows the identical trajectory; nodes are placed against the
  // half-level position the scan already found
  auto sample = [&](const HermiteStep& st, const FrontShot&) {
    while (i >= 0 && xs[i] + scan.x_half > st.x1 - 1e-12 && xs[i] + scan.x_half <= st.x0) {
      us[i] = st.eval(xs[i] + scan.x_half);
      --i;
    }
  };
  shoot(p0, delta, s_minus, h, span_max, floor_u, X + 2.0, rhs, sample);
  // anything left is beyond the integrated tail: extend at the slow rate
  for (; i >= 0; --i)
    us[i] = scan.u_end * std::exp(r_minus * (xs[i] + scan.x_half - scan.x_end));
  return us;
}

}  // namespace

FrontProfile homogenized_front(const ReactionModel& r, const MeanSet& means, double c,
                               double half_width, int n_points) {
  const double A = means.a_harm;
  const double gp0 = means.mu_arith;  // g'(0) = mean growth rate
  if (!(A > 0.0) || !(gp0 > 0.0))
    fail(ErrorCode::InvalidArgument, "front profile needs positive effective diffusion and growth");
  const double c_min = means.c_star_hom;
  if (c < c_min * (1.0 - 1e-10))
    fail(ErrorCode::InvalidArgument,
         "speed " + std::to_string(c) + " is below the homogenized minimal speed " +
             std::to_string(c_min) + ": no monotone connection");

  const double p0 = means.p0;
  const double X = half_width > 0.0 ? half_width : 40.0 / std::sqrt(gp0 / A);
  int n = std::max(n_points, 129);
  if (n % 2 == 0) ++n;  // origin must be a node
  const int mid = (n - 1) / 2;
  const double hx = 2.0 * X / (n - 1);

  // Linearization rates at the two end states.
  const double disc0 = std::max(c * c - 4.0 * A * gp0, 0.0);
  const double r_minus = (c - std::sqrt(disc0)) / (2.0 * A);
  const double r_plus = (c + std::sqrt(disc0)) / (2.0 * A);
  const double gpp = r.g_prime(p0);
  if (!(gpp < 0.0))
    fail(ErrorCode::Hypothesis,
         "saturated state is not attracting (g'(p0) >= 0): profile tail undefined");
  const double s_minus = (c - std::sqrt(c * c - 4.0 * A * gpp)) / (2.0 * A);  // < 0
  const double s_plus = (c + std::sqrt(c * c - 4.0 * A * gpp)) / (2.0 * A);

  FrontProfile fp;
  fp.c = c;
  fp.p0 = p0;
  fp.xs.resize(n);
  fp.values.resize(n);
  for (int i = 0; i < n; ++i) fp.xs[i] = -X + i * hx;

  // Start just off the saddle, far enough out that the shot's own span covers
  // the right half of the grid before the orbit leaves the linear regime.
  const double delta =
      std::max(p0 * std::min(1e-9, std::exp(s_minus * (X + 5.0))), 1e-250);
  const double rate_max = std::max(r_plus, s_plus);
  const double h = 7e-4 / std::max(1.0, rate_max / 3.0);
  const double span_max =
      2.0 * X + 60.0 * (1.0 / -s_minus + 1.0 / std::max(r_minus, 1e-6)) + 50.0;

  const std::vector<double> coarse =
      shoot_profile(A, c, r, p0, delta, s_minus, r_minus, h, span_max, fp.xs);
  fp.values = shoot_profile(A, c, r, p0, delta, s_minus, r_minus, 0.5 * h, span_max, fp.xs);
  double diff = 0.0;
  for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(coarse[i] - fp.values[i]));
  fp.residual = diff;  // step-halving error bound on the sampled orbit
  fp.values[mid] = 0.5 * p0;

  for (int i = 0; i + 1 < n; ++i)
    if (fp.values[i + 1] < fp.values[i] - 1e-12 * p0)
      fail(ErrorCode::Numeric, "converged front profile is not monotone: no monotone connection");

  // The left tail must decay at the slower linearized rate.  At the minimal
  // speed the true tail carries a polynomial prefactor, so fit
  // ln u = k x + gamma ln(-x) + C and certify k alone.
  std::vector<double> tx, tw, ty;
  for (int i = 1; i < mid; ++i)
    if (fp.values[i] > 1e-8 * p0 && fp.values[i] < 1e-4 * p0 && fp.xs[i] < -1.0) {
      tx.push_back(fp.xs[i]);
      tw.push_back(std::log(-fp.xs[i]));
      ty.push_back(std::log(fp.values[i]));
    }
  if (tx.size() >= 4) {
    const auto m = static_cast<double>(tx.size());
    double mx = 0, mw = 0, my = 0;
    for (size_t i = 0; i < tx.size(); ++i) {
      mx += tx[i];
      mw += tw[i];
      my += ty[i];
    }
    mx /= m;
    mw /= m;
    my /= m;
    double cxx = 0, cxw = 0, cww = 0, cxy = 0, cwy = 0;
    for (size_t i = 0; i < tx.size(); ++i) {
      const double dx = tx[i] - mx, dw = tw[i] - mw, dy = ty[i] - my;
      cxx += dx * dx;
      cxw += dx * dw;
      cww += dw * dw;
      cxy += dx * dy;
      cwy += dw * dy;
    }
    const double det = cxx * cww - cxw * cxw;
    double rate;
    if (std::fabs(det) > 1e-10 * cxx * cww)
      rate = (cww * cxy - cxw * cwy) / det;
    else
      rate = cxy / cxx;  // ln(-x) collinear with x over the window
    if (std::fabs(rate - r_minus) > 0.05 * r_minus)
      fail(ErrorCode::Numeric,
           "left tail decay rate " + std::to_string(rate) +
               " deviates from the slower linearized root " + std::to_string(r_minus));
  }
  return fp;
}

}  // namespace kpp
