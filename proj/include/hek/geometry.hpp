#pragma once

#include <array>
#include <functional>

#include "hek/profile.hpp"

namespace hek {

struct ConeVerdict {
  int genus = 2;
  int degree = -1;
  double a = 0.0;
  double b = 0.0;
  /// Intersection numbers α², α·C, α·S_∞ (or α·S_0), α·S_0 (or α·S_∞), α·[Σ],
  /// in the order the Kähler-cone inequalities are usually listed.
  std::array<double, 5> inequality_values{};
  bool raw_positive = false;   ///< all five strictly positive
  bool simplified = false;     ///< a > 0 and b > 0
  bool is_kahler = false;
  bool agrees() const { return raw_positive == simplified; }
};

/// Kähler-cone membership of a·C + b·S. Error(InvalidInput) for genus < 2 or degree 0.
ConeVerdict cone_check(int genus, int degree, double a, double b);

struct ClassIntegrals {
  double fibre_area = 0.0;    ///< [ω]·C = 2π(τ_max - τ_min)
  double section_area = 0.0;  ///< [ω]·S = 2π(1 - d·τ at the S end)
  const char* section_label = "S_inf";
};

ClassIntegrals class_integrals(const ProfileSolution& prof);

/// max |γ(d²φ + 2(g-1)γ)φ'' + d²φ'(φ'γ - φ) - (λ + lambda_shift)γ³| over the
/// interior grid, φ' and φ'' by centered differences. This is c₂(ω) = d²λ/(2(2π)²)·ω²
/// with the common 2-form factor cancelled.
double chern_identity_residual(const ProfileSolution& prof, double lambda_shift = 0.0);

struct RescaledClass {
  double a = 0.0;
  double b = 0.0;
  /// c₂(η) = lambda_factor · λ · η² for the rescaled metric.
  double lambda_factor = 0.0;
};

/// The class a·C + a·m·S carrying the same metric up to scale; no re-solve.
RescaledClass rescale(const ProfileSolution& prof, double a);

enum class HcsckVerdict { NotHcscK, Hcsck };
const char* to_string(HcsckVerdict v) noexcept;

struct FutakiReport {
  double lambda0 = 0.0;     ///< ∫λγ dγ / ∫γ dγ
  double deviation = 0.0;   ///< ∫(λ-λ₀)²γ dγ / ∫γ dγ
  double weight_integral = 0.0;  ///< ∫γ dγ = (e² - 1)/2
  double prefactor = 0.0;   ///< κ with futaki_value = -κ·deviation
  double futaki_value = 0.0;
  HcsckVerdict verdict = HcsckVerdict::NotHcscK;
};

inline constexpr double kHcsckThreshold = 1e-12;

/// Fibre-reduced integral ∫_X h(γ) ω² = 2(2π)²/|d| · ∫₁^e h(γ)γ dγ.
double reduced_volume_integral(const SurfaceSpec& spec, const std::function<double(double)>& h);

/// Top Bando-Futaki invariant along ∇^{1,0}λ: -‖Λ - Λ₀‖² with Λ = d²λ/(2a²)
/// the proportionality function of c₂ against ω² in the class with fibre
/// coefficient a (default 2π).
FutakiReport bando_futaki(const CoeffSet& coeffs, double a = 2.0 * std::numbers::pi);
FutakiReport bando_futaki(const ProfileSolution& prof);

}  // namespace hek
