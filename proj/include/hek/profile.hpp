#pragma once

#include <vector>

#include "hek/shoot.hpp"

namespace hek {

struct SSample {
  double s = 0.0;
  double tau = 0.0;
  double phi = 0.0;
  double gamma = 0.0;
};

/// Momentum profile φ and λ = Aγ + B on the solution grid.
struct ProfileSolution {
  BvpSolution bvp;
  std::vector<double> gamma;
  std::vector<double> v;
  std::vector<double> phi;
  std::vector<double> lambda;
  double phi_prime_left = 0.0;
  double phi_prime_right = 0.0;
  std::vector<SSample> s_samples;

  const SurfaceSpec& spec() const { return bvp.spec; }
  const CoeffSet& coeffs() const { return bvp.coeffs; }
  /// φ on the continuous Hermite interpolant of v.
  double phi_at(double g) const;
};

/// φ = (√(2v) - 2(g-1)γ)/d² on the grid, one-sided 4th-order endpoint slopes,
/// and s-samples about the interval midpoint.
/// Throws Error(NegativeDiscriminant) if any v < 0.
ProfileSolution recover_phi(const BvpSolution& bvp);

/// λ(γ) = Aγ + B; Error(Domain) outside [1, gamma_end].
double lambda_of(const CoeffSet& coeffs, double gamma);

/// Expected boundary slopes φ'(1) and φ'(gamma_end): ±1/|d|.
double expected_phi_prime_left(const SurfaceSpec& spec);
double expected_phi_prime_right(const SurfaceSpec& spec);

/// Fraction of max φ below which samples are dropped from the s-reconstruction.
inline constexpr double kGuardBandRel = 1e-4;

/// Fibre coordinate s with ds/dγ = 1/(|d|φ(γ)) and s(gamma_base) = 0, sampled
/// uniformly in s out to the guard band φ >= 1e-4·max φ. τ = -(γ-1)/d.
/// Throws Error(Domain) unless gamma_base is interior and
/// Error(GuardBandTooWide) if fewer than 8 samples survive.
std::vector<SSample> reconstruct_s(const ProfileSolution& prof, double gamma_base,
                                   double ds = 1e-2);

/// max |(2(g-1)γ + d²φ)φ' - (Aγ⁴/3 + Bγ³/2 + Cγ)| over the interior grid,
/// φ' by centered 4th-order differences.
double ode_residual(const ProfileSolution& prof);

// Finite-difference helpers on a uniform grid.
double fd_left_slope(const std::vector<double>& f, double h);
double fd_right_slope(const std::vector<double>& f, double h);
double fd_first(const std::vector<double>& f, std::size_t i, double h);
double fd_second(const std::vector<double>& f, std::size_t i, double h);

}  // namespace hek
