#pragma once

#include <array>
#include <numbers>

namespace hek {

/// A Kähler class a·C + b·S on the ruled surface P(L ⊕ O) over a genus-g curve,
/// with L of degree d. S is the infinity divisor for d < 0 and the zero divisor
/// for d > 0.
///
/// The reduced problem only sees m = b/a and |d|; the momentum variable ranges
/// over [1, gamma_end] with gamma_end = |d|·m + 1.
struct SurfaceSpec {
  int genus = 2;
  int degree = -1;
  double a = 2.0 * std::numbers::pi;
  double b = 2.0 * std::numbers::pi;

  /// Normalized class 2π(C + m·S).
  static SurfaceSpec from_m(int genus, int degree, double m);

  double m() const { return b / a; }
  double gamma_end() const;
  int abs_degree() const { return degree < 0 ? -degree : degree; }
  double d2() const { return static_cast<double>(degree) * degree; }
  /// 2(g-1), the coefficient that recurs through the reduced equations.
  double two_g1() const { return 2.0 * (genus - 1); }
  /// v(1) = 2(g-1)^2.
  double v_start() const;
  /// v(gamma_end) demanded by the boundary condition: 2(g-1)^2 gamma_end^2.
  double v_target() const;
  /// "S_inf" for d < 0, "S_0" for d > 0.
  const char* section_label() const { return degree < 0 ? "S_inf" : "S_0"; }

  /// Throws Error(InvalidInput) unless genus >= 2, degree != 0, a > 0, b > 0.
  void validate() const;
};

/// Coefficients of λ(γ) = Aγ + B for a given shooting constant C.
struct CoeffSet {
  SurfaceSpec spec;
  double C = 0.0;
  double A = 0.0;
  double B = 0.0;
  double gamma0 = 0.0;  ///< unique root of p in (1, gamma_end)
};

/// A, B fixed by p(1) = 2(g-1)|d| and p(gamma_end) = -2(g-1)|d|; gamma0 by bisection.
CoeffSet coeffs_from_C(const SurfaceSpec& spec, double C);

/// dA/dC and dB/dC; independent of C.
struct CoeffSlopes {
  double dA = 0.0;
  double dB = 0.0;
};
CoeffSlopes coeff_slopes(const SurfaceSpec& spec);

/// p(γ) = d²(Aγ³/3 + Bγ²/2 + C).
double poly_p(const CoeffSet& c, double gamma);

/// P(γ) = ∫₁^γ p(y)·y dy, in closed form.
double poly_P(const CoeffSet& c, double gamma);

struct LinearInC {
  double L = 0.0;  ///< slope
  double N = 0.0;  ///< intercept
};

/// P_C(gamma_end) = L·C + N.
LinearInC constants_LN(const SurfaceSpec& spec);

/// q(γ) = d/dC (p_C(γ)·γ), evaluated from its factorization
/// d²·(e+1)/e²·(γ + e/(e+1))·γ·(γ-1)·(γ-e), e = gamma_end.
double poly_q(const SurfaceSpec& spec, double gamma);

/// Same polynomial from the monomial form d²(A'γ⁴/3 + B'γ³/2 + γ).
double poly_q_expanded(const SurfaceSpec& spec, double gamma);

/// Q(γ) = ∫₁^γ q(y) dy.
double poly_Q(const SurfaceSpec& spec, double gamma);

/// Throws Error(Domain) unless gamma lies in [1, gamma_end] (up to rounding).
void check_gamma(const SurfaceSpec& spec, double gamma);

}  // namespace hek
