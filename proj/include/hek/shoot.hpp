#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hek/coeffs.hpp"
#include "hek/ivp.hpp"

namespace hek {

struct ShootResiduals {
  double target = 0.0;        ///< 2(g-1)² gamma_end²
  double end_abs = 0.0;       ///< |v(gamma_end) - target|
  double end_rel = 0.0;       ///< end_abs / target
  double slope_end = 0.0;     ///< |v'(gamma_end) - 2(g-1)·e·(2(g-1) - |d|)|, not imposed
  double slope_start = 0.0;   ///< |v'(1) - 2(g-1)(2(g-1) + |d|)|
  double interior_margin = 0.0;  ///< min over interior grid of v - 2(g-1)²γ²
};

struct BvpSolution {
  SurfaceSpec spec;
  double c_star = 0.0;
  CoeffSet coeffs;
  IvpTrajectory trajectory;
  ShootResiduals residuals;
  int iterations = 0;
  double tol = 0.0;
  double ivp_tol = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

inline constexpr double kDefaultShootTol = 1e-9;
inline constexpr int kDefaultGrid = 512;

/// Integrator tolerance used by the outer solves for a shooting tolerance.
double ivp_tol_for(double shoot_tol);

/// u(gamma_end; C): v(gamma_end) if the trajectory completes, else 0.
double shooting_objective(const SurfaceSpec& spec, double C, double ivp_tol);

/// Residuals of a trajectory against the boundary data at gamma_end.
ShootResiduals shoot_residuals(const IvpTrajectory& traj);

/// Unique C* with v(gamma_end; C*) = 2(g-1)² gamma_end², found by monotone
/// bisection on u(gamma_end; ·). Throws NoBracket or NonConvergence.
BvpSolution solve_bvp(const SurfaceSpec& spec, double tol = kDefaultShootTol,
                      int grid = kDefaultGrid, std::optional<double> c_lo_hint = std::nullopt);

/// Threshold M with 𝒞 = (-∞, M): bisection on the Complete/Breakdown indicator.
double find_M(const SurfaceSpec& spec, double tol = kDefaultShootTol);

struct ScanRow {
  double C = 0.0;
  IvpStatus status = IvpStatus::Complete;
  double value = 0.0;  ///< v(gamma_end) when Complete, gamma_star when Breakdown
  std::string error;   ///< non-empty if the integrator failed for this row
};

std::vector<ScanRow> scan_C(const SurfaceSpec& spec, double c_min, double c_max, int steps,
                            double ivp_tol = 1e-12);

struct PhaseRow {
  double m = 0.0;
  double c_star = 0.0;
  double M = 0.0;
  std::string error;
};

/// solve_bvp and find_M for every spec; all specs must share (genus, degree).
std::vector<PhaseRow> phase_curve(const std::vector<SurfaceSpec>& specs,
                                  double tol = kDefaultShootTol);

}  // namespace hek
