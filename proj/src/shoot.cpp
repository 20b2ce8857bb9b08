#include "hek/shoot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hek/error.hpp"

namespace hek {

namespace {

constexpr int kMaxDoublings = 60;
constexpr int kMaxBisections = 200;

void check_shoot_tol(double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-6)) {
    std::ostringstream msg;
    msg << "shooting tolerance " << tol << " outside [1e-12, 1e-6]";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

IvpTrajectory run(const SurfaceSpec& spec, double C, double ivp_tol, int grid) {
  return integrate(coeffs_from_C(spec, C), ivp_tol, grid);
}

// Some C in 𝒞 at or below `start`: start itself, else start - 2^j.
double complete_point_below(const SurfaceSpec& spec, double start, double ivp_tol) {
  if (run(spec, start, ivp_tol, 16).complete()) return start;
  for (int j = 0; j <= kMaxDoublings; ++j) {
    const double c = start - std::ldexp(1.0, j);
    if (run(spec, c, ivp_tol, 16).complete()) return c;
  }
  throw Error(ErrorKind::NoBracket, "no completing C found below the start point");
}

}  // namespace

double ivp_tol_for(double shoot_tol) { return std::clamp(shoot_tol * 1e-3, 1e-14, 1e-10); }

double shooting_objective(const SurfaceSpec& spec, double C, double ivp_tol) {
  return run(spec, C, ivp_tol, 16).end_value();
}

ShootResiduals shoot_residuals(const IvpTrajectory& traj) {
  const SurfaceSpec& spec = traj.coeffs.spec;
  const double e = spec.gamma_end();
  const double tg = spec.two_g1();
  const double ad = spec.abs_degree();
  ShootResiduals r;
  r.target = spec.v_target();
  const double v_end = traj.end_value();
  r.end_abs = std::abs(v_end - r.target);
  r.end_rel = r.end_abs / r.target;
  r.slope_end = std::abs(ivp_rhs(traj.coeffs, e, v_end) - tg * e * (tg - ad));
  r.slope_start = std::abs(ivp_rhs(traj.coeffs, 1.0, traj.v_values.front()) - tg * (tg + ad));
  r.interior_margin = std::numeric_limits<double>::infinity();
  const double g1sq = spec.v_start() / 2.0;
  for (std::size_t i = 1; i + 1 < traj.v_values.size(); ++i) {
    const double gi = traj.gamma_grid[i];
    r.interior_margin = std::min(r.interior_margin, traj.v_values[i] - 2.0 * g1sq * gi * gi);
  }
  return r;
}

BvpSolution solve_bvp(const SurfaceSpec& spec, double tol, int grid,
                      std::optional<double> c_lo_hint) {
  spec.validate();
  check_shoot_tol(tol);
  const double ivp_tol = ivp_tol_for(tol);
  const double target = spec.v_target();
  auto objective = [&](double C) { return run(spec, C, ivp_tol, grid).end_value(); };

  // u(e; ·) is non-increasing, so C_lo needs u > target and C_hi needs u < target.
  const double start = c_lo_hint.value_or(2.0);
  double lo = start;
  double u_lo = objective(lo);
  for (int j = 0; u_lo <= target; ++j) {
    if (j > kMaxDoublings) throw Error(ErrorKind::NoBracket, "no lower shooting bracket");
    lo = start - std::ldexp(1.0, j);
    u_lo = objective(lo);
  }
  double hi = lo;
  double u_hi = u_lo;
  for (int k = 0; u_hi >= target; ++k) {
    if (k > kMaxDoublings) {
      throw Error(ErrorKind::NoBracket, "doubling exceeded C = start + 2^60 without undershoot");
    }
    hi = lo + std::ldexp(1.0, k);
    u_hi = objective(hi);
  }

  BvpSolution sol;
  sol.spec = spec;
  sol.tol = tol;
  sol.ivp_tol = ivp_tol;
  sol.bracket_lo = lo;
  sol.bracket_hi = hi;

  int it = 0;
  for (; it < kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double u = objective(mid);
    if (u > target) {
      lo = mid;
      u_lo = u;
    } else {
      hi = mid;
      u_hi = u;
    }
  }
  if (it == kMaxBisections) {
    throw Error(ErrorKind::NonConvergence, "bisection did not converge in 200 iterations");
  }
  sol.iterations = it;
  sol.c_star = std::abs(u_lo - target) <= std::abs(u_hi - target) ? lo : hi;
  sol.coeffs = coeffs_from_C(spec, sol.c_star);
  sol.trajectory = integrate(sol.coeffs, ivp_tol, grid);
  sol.residuals = shoot_residuals(sol.trajectory);
  if (!sol.trajectory.complete() || !(sol.residuals.end_rel <= tol)) {
    std::ostringstream msg;
    msg << "shooting residual " << sol.residuals.end_rel << " exceeds tolerance " << tol
        << " at C = " << sol.c_star;
    throw Error(ErrorKind::NonConvergence, msg.str());
  }
  return sol;
}

double find_M(const SurfaceSpec& spec, double tol) {
  spec.validate();
  check_shoot_tol(tol);
  const double ivp_tol = ivp_tol_for(tol);
  auto completes = [&](double C) { return run(spec, C, ivp_tol, 16).complete(); };

  double lo = complete_point_below(spec, 2.0, ivp_tol);
  double hi = 0.0;
  for (int k = 0;; ++k) {
    if (k > kMaxDoublings) {
      throw Error(ErrorKind::NoBracket, "no breakdown found up to C = 2 + 2^60");
    }
    hi = 2.0 + std::ldexp(1.0, k);
    if (hi > lo && !completes(hi)) break;
  }
  for (int it = 0; hi - lo > tol * std::max(1.0, std::abs(lo)); ++it) {
    if (it >= kMaxBisections) {
      throw Error(ErrorKind::NonConvergence, "threshold bisection did not converge");
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (completes(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

std::vector<ScanRow> scan_C(const SurfaceSpec& spec, double c_min, double c_max, int steps,
                            double ivp_tol) {
  spec.validate();
  if (!(c_min < c_max) || steps < 2) {
    throw Error(ErrorKind::InvalidInput, "scan needs c_min < c_max and at least 2 steps");
  }
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  const double dc = (c_max - c_min) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    ScanRow row;
    row.C = i + 1 == steps ? c_max : c_min + dc * i;
    try {
      const IvpTrajectory t = run(spec, row.C, ivp_tol, 16);
      row.status = t.status;
      row.value = t.complete() ? t.end_value() : t.gamma_star;
    } catch (const Error& err) {
      row.status = IvpStatus::Breakdown;
      row.value = std::numeric_limits<double>::quiet_NaN();
      row.error = std::string(to_string(err.kind())) + ": " + err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PhaseRow> phase_curve(const std::vector<SurfaceSpec>& specs, double tol) {
  if (specs.empty()) return {};
  for (const SurfaceSpec& s : specs) {
    s.validate();
    if (s.genus != specs.front().genus || s.degree != specs.front().degree) {
      throw Error(ErrorKind::InvalidInput, "phase curve specs must share genus and degree");
    }
  }
  std::vector<SurfaceSpec> sorted = specs;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SurfaceSpec& x, const SurfaceSpec& y) { return x.m() < y.m(); });
  std::vector<PhaseRow> rows;
  rows.reserve(sorted.size());
  for (const SurfaceSpec& s : sorted) {
    PhaseRow row;
    row.m = s.m();
    try {
      row.c_star = solve_bvp(s, tol).c_star;
      row.M = find_M(s, tol);
    } catch (const Error& err) {
      row.c_star = row.M = std::numeric_limits<double>::quiet_NaN();
      row.error = std::string(to_string(err.kind())) + ": " + err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hek
