#include "kpp/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpp/errors.hpp"
#include "kpp/tridiag.hpp"

namespace kpp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap_unit(double y) { return y - std::floor(y); }

// Integral of the piecewise-linear function through (x_i, y_i) over [lo, hi],
// with constant extension beyond the node range.
double polyline_integral(const std::vector<double>& x, const std::vector<double>& y, double lo,
                         double hi) {
  if (!(hi > lo)) return 0.0;
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  if (lo < x.front()) total += (std::min(hi, x.front()) - lo) * y.front();
  if (hi > x.back()) total += (hi - std::max(lo, x.back())) * y.back();
  const double a = std::max(lo, x.front());
  const double b = std::min(hi, x.back());
  if (!(b > a)) return total;

  int i = static_cast<int>(std::upper_bound(x.begin(), x.end(), a) - x.begin()) - 1;
  i = std::clamp(i, 0, n - 2);
  auto at = [&](int seg, double t) {
    const double w = (t - x[seg]) / (x[seg + 1] - x[seg]);
    return y[seg] * (1.0 - w) + y[seg + 1] * w;
  };
  while (i + 1 < n && x[i] < b) {
    const double seg_lo = std::max(a, x[i]);
    const double seg_hi = std::min(b, x[i + 1]);
    if (seg_hi > seg_lo) total += 0.5 * (at(i, seg_lo) + at(i, seg_hi)) * (seg_hi - seg_lo);
    ++i;
  }
  return total;
}

double interp_row(const FrontField& f, double t, int node) {
  const auto& ts = f.times;
  int j = static_cast<int>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin()) - 1;
  j = std::clamp(j, 0, f.n_snapshots() - 2);
  const double w = (t - ts[j]) / (ts[j + 1] - ts[j]);
  return f.value(j, node) * (1.0 - w) + f.value(j + 1, node) * w;
}

}  // namespace

FrontField simulate(const PeriodicCoefficient& a, const ReactionModel& r, const MeanSet& means,
                    const SimConfig& cfg) {
  if (!(cfg.L > 0.0)) fail(ErrorCode::InvalidArgument, "period L must be positive");
  const double kx_real = cfg.X / cfg.L;
  const int kx = static_cast<int>(std::llround(kx_real));
  if (kx < 1 || std::fabs(kx - kx_real) > 1e-9 * kx)
    fail(ErrorCode::InvalidArgument,
         "domain half-width X must be an integer multiple of the period L");
  const int cells = 2 * kx;
  if (cfg.nx < 16 || cfg.nx % cells != 0)
    fail(ErrorCode::InvalidArgument,
         "nx must be a multiple of 2X/L = " + std::to_string(cells) +
             " so period boundaries fall on grid nodes");
  const int ppp = cfg.nx / cells;
  if (ppp < 4) fail(ErrorCode::InvalidArgument, "fewer than 4 grid points per period");
  if (!(cfg.theta_level > 0.0 && cfg.theta_level < 1.0))
    fail(ErrorCode::InvalidArgument, "theta must lie in (0,1)");
  if (!(cfg.dt > 0.0) || !(cfg.T >= cfg.dt))
    fail(ErrorCode::InvalidArgument, "need 0 < dt <= T");
  const double maxfs = r.max_abs_fs();
  if (maxfs > 0.0) {
    const double bound = 0.5 / maxfs;
    if (cfg.dt > bound * (1.0 + 1e-12))
      fail(ErrorCode::InvalidArgument,
           "dt = " + std::to_string(cfg.dt) +
               " exceeds the explicit-reaction stability bound 0.5/max|f_s| = " +
               std::to_string(bound));
  }

  // Time step and snapshot cadence.  When a cadence speed is given, dt is
  // subdivided so consecutive snapshots sit exactly L/c apart.
  double dt = cfg.dt;
  int steps_per_snap = 1;
  double snap_dt = 0.0;
  if (cfg.align_cadence_c > 0.0) {
    const double tau = cfg.L / cfg.align_cadence_c;
    steps_per_snap = std::max(1, static_cast<int>(std::ceil(tau / dt - 1e-9)));
    dt = tau / steps_per_snap;
    snap_dt = tau;
  } else {
    snap_dt = cfg.snapshot_dt > 0.0 ? cfg.snapshot_dt : cfg.T / 20.0;
    steps_per_snap = std::max(1, static_cast<int>(std::llround(snap_dt / dt)));
    snap_dt = steps_per_snap * dt;
  }
  const double steps_real = std::ceil(cfg.T / dt - 1e-9);
  if (steps_real > 5e7) fail(ErrorCode::InvalidArgument, "time step count exceeds 5e7");
  const int n_steps = static_cast<int>(steps_real);
  const int n_snaps = n_steps / steps_per_snap + 1;
  const int np = cfg.nx + 1;
  const std::size_t bytes = static_cast<std::size_t>(n_snaps) * np * sizeof(double);
  if (bytes > (std::size_t{2} << 30))
    fail(ErrorCode::InvalidArgument,
         "snapshot storage would exceed 2 GiB; increase snapshot_dt or coarsen the grid");

  const double hx = 2.0 * cfg.X / cfg.nx;
  FrontField ff;
  ff.L = cfg.L;
  ff.dt = dt;
  ff.snapshot_dt = snap_dt;
  ff.p0 = means.p0;
  ff.level = cfg.theta_level * means.p0;
  ff.xs.resize(np);
  for (int i = 0; i < np; ++i) ff.xs[i] = -cfg.X + i * hx;

  // Coefficient and growth-rate samples along the line.
  std::vector<double> am(cfg.nx), yline(np), mu_line(np);
  for (int i = 0; i < cfg.nx; ++i) am[i] = a.value(((i + 0.5) * hx - cfg.X) / cfg.L);
  for (int i = 0; i < np; ++i) {
    yline[i] = wrap_unit(ff.xs[i] / cfg.L);
    mu_line[i] = r.mu().value(yline[i]);
  }

  // Stationary state sampled on the line (the right boundary value and the
  // 'stationary' initial condition).  Period boundaries are grid nodes, so
  // cell nodes map onto line nodes exactly.
  if (means.mu_arith > 0.0) {
    try {
      const int mult = ppp >= 16 ? 1 : (15 + ppp) / ppp;
      const PeriodicGrid cell(ppp * mult);
      const StationaryState st = stationary_state(a, r, means, cell, cfg.L);
      ff.p_line.resize(np);
      for (int i = 0; i < np; ++i) ff.p_line[i] = st.values[(i % ppp) * mult];
    } catch (const Error&) {
      ff.p_line.clear();
    }
  }

  // Initial data.
  std::vector<double> u(np, 0.0);
  const double cap = 2.0 * r.M();
  switch (cfg.ic) {
    case SimConfig::Ic::Step: {
      const double h = cfg.ic_height > 0.0 ? cfg.ic_height : means.p0;
      if (!(h > 0.0))
        fail(ErrorCode::InvalidArgument, "step initial data needs a positive height");
      for (int i = 0; i < np; ++i) u[i] = ff.xs[i] >= cfg.ic_position ? h : 0.0;
      break;
    }
    case SimConfig::Ic::Tanh: {
      const double h = cfg.ic_height > 0.0 ? cfg.ic_height : means.p0;
      const double w = cfg.ic_width > 0.0 ? cfg.ic_width : 1.0;
      if (!(h > 0.0))
        fail(ErrorCode::InvalidArgument, "tanh initial data needs a positive height");
      for (int i = 0; i < np; ++i)
        u[i] = 0.5 * h * (1.0 + std::tanh((ff.xs[i] - cfg.ic_position) / w));
      break;
    }
    case SimConfig::Ic::Bump: {
      const double h = cfg.ic_height > 0.0 ? cfg.ic_height : 0.5 * means.p0;
      const double w = cfg.ic_width > 0.0 ? cfg.ic_width : 1.0;
      if (!(h > 0.0))
        fail(ErrorCode::InvalidArgument, "bump initial data needs a positive height");
      for (int i = 0; i < np; ++i) {
        const double q = (ff.xs[i] - cfg.ic_position) / w;
        u[i] = std::fabs(q) < 1.0 ? h * (1.0 - q * q) * (1.0 - q * q) : 0.0;
      }
      break;
    }
    case SimConfig::Ic::Stationary: {
      if (ff.p_line.empty())
        fail(ErrorCode::Numeric,
             "stationary initial data needs a computable stationary state for this preset");
      u = ff.p_line;
      break;
    }
    case SimConfig::Ic::Front: {
      const FrontProfile fp = homogenized_front(r, means, means.c_star_hom);
      for (int i = 0; i < np; ++i) u[i] = fp.value_at(ff.xs[i] - cfg.ic_position);
      break;
    }
  }

  // Dirichlet values held for the whole run: left keeps the initial trace
  // (zero for the shipped front-like kinds), right takes the stationary value
  // when available so the invaded state matches the front's +infinity limit.
  const double left_bc = u.front();
  const double right_bc =
      cfg.ic == SimConfig::Ic::Stationary || ff.p_line.empty() ? u.back() : ff.p_line.back();
  u.back() = right_bc;

  for (int i = 0; i < np; ++i)
    if (!std::isfinite(u[i]) || u[i] < -1e-10 || u[i] > cap)
      fail(ErrorCode::InvalidArgument, "initial data leaves [-1e-10, 2M]");

  // Constant-in-time implicit diffusion matrix over the interior nodes.
  const int m = np - 2;
  const double c0 = dt / (hx * hx);
  std::vector<double> msub(m), mdia(m), msup(m);
  for (int i = 1; i <= m; ++i) {
    msub[i - 1] = -c0 * am[i - 1];
    mdia[i - 1] = 1.0 + c0 * (am[i - 1] + am[i]);
    msup[i - 1] = -c0 * am[i];
  }

  const auto kind = r.kind();
  const double s0 = r.s0() ? *r.s0() : 1.0;
  auto react = [&](int i, double s) {
    switch (kind) {
      case ReactionModel::Kind::Logistic:
        return mu_line[i] * s * (1.0 - s / s0);
      case ReactionModel::Kind::Quadratic:
        return mu_line[i] * s - s * s;
      default:
        return r.f(yline[i], s);
    }
  };

  ff.times.reserve(n_snaps);
  ff.data.reserve(static_cast<std::size_t>(n_snaps) * np);
  ff.level_times.reserve(n_steps + 1);
  ff.level_positions.reserve(n_steps + 1);

  auto record_snapshot = [&](double t) {
    ff.times.push_back(t);
    ff.data.insert(ff.data.end(), u.begin(), u.end());
  };
  auto record_level = [&](double t) {
    ff.level_times.push_back(t);
    double pos = kNaN;
    if (ff.level > 0.0) {
      for (int i = 0; i < np; ++i) {
        if (u[i] >= ff.level) {
          if (i == 0)
            pos = ff.xs[0];
          else {
            const double denom = u[i] - u[i - 1];
            pos = denom > 0.0 ? ff.xs[i - 1] + hx * (ff.level - u[i - 1]) / denom : ff.xs[i];
          }
          break;
        }
      }
    }
    ff.level_positions.push_back(pos);
  };

  record_snapshot(0.0);
  record_level(0.0);

  std::vector<double> rhs(m), next(np);
  for (int s = 0; s < n_steps; ++s) {
    for (int i = 1; i <= m; ++i) rhs[i - 1] = u[i] + dt * react(i, u[i]);
    rhs[0] += c0 * am[0] * left_bc;
    rhs[m - 1] += c0 * am[cfg.nx - 1] * right_bc;
    tridiag_solve(msub, mdia, msup, rhs);

    next.front() = left_bc;
    next.back() = right_bc;
    std::copy(rhs.begin(), rhs.end(), next.begin() + 1);

    const double t = (s + 1) * dt;
    bool dipped = false;
    for (int i = 0; i < np; ++i) {
      const double v = next[i];
      if (!std::isfinite(v) || v < -1e-10 || v > cap)
        fail(ErrorCode::Numeric,
             "solution left [-1e-10, 2M] at t = " + std::to_string(t) + " (unstable run)");
      if (v < u[i] - 1e-12) dipped = true;
    }
    if (dipped) ff.monotone_since = s + 1;

    u.swap(next);
    record_level(t);
    if ((s + 1) % steps_per_snap == 0) record_snapshot(t);
  }
  return ff;
}

SpeedEstimate measure_speed(const FrontField& field, double t_a, double t_b) {
  if (field.level_times.size() < 4) fail(ErrorCode::InvalidArgument, "field holds no level trace");
  const double Tend = field.level_times.back();
  if (t_a < 0.0) t_a = 0.5 * Tend;
  if (t_b < 0.0) t_b = Tend;
  if (!(t_b > t_a)) fail(ErrorCode::InvalidArgument, "empty fit window");

  const double hx = field.xs[1] - field.xs[0];
  const double lo_edge = field.xs.front() + 2.0 * hx;
  const double hi_edge = field.xs.back() - 2.0 * hx;

  std::vector<double> ts, ps;
  for (std::size_t i = 0; i < field.level_times.size(); ++i) {
    const double t = field.level_times[i];
    if (t < t_a || t > t_b) continue;
    const double x = field.level_positions[i];
    if (std::isnan(x))
      fail(ErrorCode::Numeric, "no tracked level inside the fit window (level set absent)");
    if (x <= lo_edge || x >= hi_edge)
      fail(ErrorCode::Numeric, "front reached the domain boundary inside the fit window");
    ts.push_back(t);
    ps.push_back(x);
  }
  if (ts.size() < 10) fail(ErrorCode::Numeric, "fit window holds too few level samples");
  if (std::fabs(ps.back() - ps.front()) < 20.0 * field.L)
    fail(ErrorCode::Numeric, "fit window sweeps fewer than 20 periods; extend T");

  const auto n = static_cast<double>(ts.size());
  double st = 0, sx = 0, stt = 0, stx = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sx += ps[i];
    stt += ts[i] * ts[i];
    stx += ts[i] * ps[i];
  }
  const double slope = (n * stx - st * sx) / (n * stt - st * st);
  const double inter = (sx - slope * st) / n;

  double dev = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i)
    dev = std::max(dev, std::fabs(ps[i] - (inter + slope * ts[i])));

  SpeedEstimate est;
  est.c_measured = std::fabs(slope);
  est.t_a = t_a;
  est.t_b = t_b;
  est.fit_residual = dev;
  if (!(dev < 0.05 * est.c_measured * (t_b - t_a)))
    fail(ErrorCode::Numeric,
         "level-set trace deviates from a line by more than 5% of its displacement");
  return est;
}

double pulsating_residual(const FrontField& field, double L, double c, int k, double from_time) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "shift count k must be >= 1");
  if (field.n_snapshots() < k + 1) fail(ErrorCode::Numeric, "not enough snapshots for the shift");
  const double hx = field.xs[1] - field.xs[0];
  const int sn = static_cast<int>(std::llround(L / hx));
  if (sn < 1 || std::fabs(sn * hx - L) > 1e-9 * L)
    fail(ErrorCode::Numeric, "period L is not an exact node shift on this grid");
  if (!(c > 0.0)) fail(ErrorCode::InvalidArgument, "speed must be positive");
  const double tau = field.snapshot_dt;
  if (std::fabs(tau - L / c) > 0.05 * tau)
    fail(ErrorCode::Numeric,
         "snapshot cadence " + std::to_string(tau) + " is not aligned with L/c = " +
             std::to_string(L / c) + "; rerun with the cadence speed set");

  const int np = field.n_nodes();
  const int i_lo = np / 4;
  const int i_hi = std::min(3 * np / 4, np - 1 - k * sn);
  double worst = -1.0;
  for (int j = 0; j + k < field.n_snapshots(); ++j) {
    if (field.times[j] < from_time) continue;
    const double* uj = field.row(j);
    const double* ujk = field.row(j + k);
    double local = 0.0;
    for (int i = i_lo; i <= i_hi; ++i)
      local = std::max(local, std::fabs(ujk[i] - uj[i + k * sn]));
    worst = std::max(worst, local);
  }
  if (worst < 0.0)
    fail(ErrorCode::Numeric, "no snapshot pairs at or after the requested start time");
  return worst;
}

double normalize_phase(const FrontField& field, double p0) {
  if (field.xs.front() > 0.0 || field.xs.back() < 1.0)
    fail(ErrorCode::InvalidArgument, "domain does not contain the unit interval (0,1)");
  if (field.n_snapshots() < 2) fail(ErrorCode::InvalidArgument, "field holds no snapshots");
  const double smin = field.times.front();
  const double smax = field.times.back() - 1.0;
  if (smax <= smin)
    fail(ErrorCode::Numeric, "simulated span is shorter than the unit time window");

  std::vector<double> mass(field.n_snapshots());
  for (int j = 0; j < field.n_snapshots(); ++j) {
    const double* row = field.row(j);
    std::vector<double> rowv(row, row + field.n_nodes());
    mass[j] = polyline_integral(field.xs, rowv, 0.0, 1.0);
  }
  auto I = [&](double s) { return polyline_integral(field.times, mass, s, s + 1.0); };

  const double target = 0.5 * p0;
  const double scale = std::max(1.0, std::fabs(p0));
  const double Ilo = I(smin);
  const double Ihi = I(smax);
  if (std::fabs(Ilo - target) < 1e-9 * scale && std::fabs(Ihi - target) < 1e-9 * scale)
    return 0.0;  // already at the normalization level everywhere
  if (Ilo > target)
    fail(ErrorCode::Numeric,
         "unit square already beyond the normalization level at the first snapshot");
  if (Ihi < target)
    fail(ErrorCode::Numeric,
         "front does not reach the normalization level within the simulated span");

  double lo = smin, hi = smax;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (I(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double profile_compare(const FrontField& field, double s_star, const FrontProfile& profile,
                       double window_lo, double window_hi) {
  if (!(window_hi > window_lo)) fail(ErrorCode::InvalidArgument, "empty comparison window");
  if (window_lo < field.xs.front() - 1e-12 || window_hi > field.xs.back() + 1e-12)
    fail(ErrorCode::InvalidArgument, "window outside simulated range");
  if (s_star < field.times.front() - 1e-12 || s_star + 1.0 > field.times.back() + 1e-9)
    fail(ErrorCode::InvalidArgument, "normalized time window outside simulated range");

  const double c = profile.c;
  const double p0 = profile.p0;

  // Align the profile by the same unit-square integral rule the field was
  // normalized with: find phi with the mean of U0(x + c t + phi) over the
  // unit square equal to p0/2.
  auto J = [&](double phi) {
    const int nt = 256;
    double acc = 0.0;
    for (int q = 0; q <= nt; ++q) {
      const double t = static_cast<double>(q) / nt;
      const double w = (q == 0 || q == nt) ? 0.5 : 1.0;
      acc += w * polyline_integral(profile.xs, profile.values, c * t + phi, c * t + phi + 1.0);
    }
    return acc / nt;
  };
  double lo = profile.xs.front() - c - 1.0;
  double hi = profile.xs.back() + 1.0;
  const double target = 0.5 * p0;
  if (J(lo) > target || J(hi) < target)
    fail(ErrorCode::Numeric, "profile does not bracket its normalization level");
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::fabs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (J(mid) < target ? lo : hi) = mid;
  }
  const double phi = 0.5 * (lo + hi);

  const double hx = field.xs[1] - field.xs[0];
  const int i_lo = std::clamp(
      static_cast<int>(std::ceil((window_lo - field.xs.front()) / hx - 1e-9)), 0,
      field.n_nodes() - 1);
  const int i_hi = std::clamp(
      static_cast<int>(std::floor((window_hi - field.xs.front()) / hx + 1e-9)), 0,
      field.n_nodes() - 1);
  if (i_hi <= i_lo) fail(ErrorCode::InvalidArgument, "window narrower than one grid cell");

  const int nt = 128;
  double acc = 0.0;
  for (int q = 0; q <= nt; ++q) {
    const double tq = static_cast<double>(q) / nt;
    const double wt = ((q == 0 || q == nt) ? 0.5 : 1.0) / nt;
    double row_acc = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) {
      const double wx = (i == i_lo || i == i_hi) ? 0.5 * hx : hx;
      const double uf = interp_row(field, s_star + tq, i);
      const double u0 = profile.value_at(field.xs[i] + c * tq + phi);
      row_acc += wx * (uf - u0) * (uf - u0);
    }
    acc += wt * row_acc;
  }
  return std::sqrt(acc);
}

}  // namespace kpp
