#pragma once

#include <vector>

#include "hek/coeffs.hpp"

namespace hek {

enum class IvpStatus { Complete, Breakdown };

const char* to_string(IvpStatus status) noexcept;

/// Accepted integrator step end point; consecutive knots carry a cubic
/// Hermite interpolant of v.
struct Knot {
  double gamma = 0.0;
  double v = 0.0;
  double dv = 0.0;
};

struct IvpTrajectory {
  CoeffSet coeffs;
  IvpStatus status = IvpStatus::Complete;
  double gamma_star = 0.0;  ///< breakdown location; gamma_end when Complete
  double breakdown_floor = 0.0;
  double tol = 0.0;

  /// Uniform resampling over [1, gamma_end] (Complete) or [1, gamma_star].
  std::vector<double> gamma_grid;
  std::vector<double> v_values;

  std::vector<Knot> knots;
  int accepted_steps = 0;
  int rejected_steps = 0;

  bool complete() const { return status == IvpStatus::Complete; }
  /// v at gamma_end, or 0 after a breakdown.
  double end_value() const;
};

/// Relative floor below which v counts as having reached zero.
inline constexpr double kBreakdownFloorRel = 1e-12;
/// Below this fraction of v(1) the integrator is in the near-breakdown regime.
inline constexpr double kNearBreakdownRel = 1e-6;

/// Right-hand side 2(g-1)√2·√v + p(γ)·γ. Negative v is clamped to zero.
double ivp_rhs(const CoeffSet& c, double gamma, double v);

/// Integrates v' = 2(g-1)√2·√v + p(γ)γ, v(1) = 2(g-1)², with an adaptive
/// Dormand-Prince 5(4) pair. Stops at gamma_end or when v falls to the
/// breakdown floor with negative slope; the crossing is located to 1e-12 in γ.
///
/// tol in [1e-14, 1e-6] bounds the local error relative to max(1, |v|).
/// dense_count >= 16 is the length of the uniform output grid.
/// Throws Error(StepCollapse) when the step size underflows away from a
/// breakdown, and Error(InvalidInput) for bad arguments.
IvpTrajectory integrate(const CoeffSet& coeffs, double tol, int dense_count);

/// The continuous extension u: equal to v where v exists and 0 on
/// [gamma_star, gamma_end].
class UExtended {
 public:
  explicit UExtended(IvpTrajectory traj);

  double operator()(double gamma) const;
  /// Derivative of the interpolant (0 past breakdown).
  double derivative(double gamma) const;

  const IvpTrajectory& trajectory() const { return traj_; }

 private:
  IvpTrajectory traj_;
};

UExtended u_extended(const CoeffSet& coeffs, double tol);

/// Hermite evaluation over a knot sequence; gamma must lie within the knots.
double hermite_eval(const std::vector<Knot>& knots, double gamma);
double hermite_derivative(const std::vector<Knot>& knots, double gamma);

}  // namespace hek
