#include "hek/coeffs.hpp"

#include <cmath>
#include <sstream>

#include "hek/error.hpp"

namespace hek {

SurfaceSpec SurfaceSpec::from_m(int genus, int degree, double m) {
  SurfaceSpec s;
  s.genus = genus;
  s.degree = degree;
  s.a = 2.0 * std::numbers::pi;
  s.b = s.a * m;
  return s;
}

double SurfaceSpec::gamma_end() const { return abs_degree() * m() + 1.0; }

double SurfaceSpec::v_start() const {
  const double g1 = genus - 1.0;
  return 2.0 * g1 * g1;
}

double SurfaceSpec::v_target() const {
  const double e = gamma_end();
  return v_start() * e * e;
}

void SurfaceSpec::validate() const {
  std::ostringstream msg;
  if (genus < 2) {
    msg << "genus must be >= 2, got " << genus;
  } else if (degree == 0) {
    msg << "degree must be nonzero";
  } else if (!(a > 0.0) || !std::isfinite(a)) {
    msg << "class coefficient a must be positive and finite, got " << a;
  } else if (!(b > 0.0) || !std::isfinite(b)) {
    msg << "class coefficient b must be positive and finite, got " << b;
  } else {
    return;
  }
  throw Error(ErrorKind::InvalidInput, msg.str());
}

void check_gamma(const SurfaceSpec& spec, double gamma) {
  const double e = spec.gamma_end();
  const double slack = 1e-12 * e;
  if (!(gamma >= 1.0 - slack && gamma <= e + slack)) {
    std::ostringstream msg;
    msg << "gamma = " << gamma << " outside [1, " << e << "]";
    throw Error(ErrorKind::Domain, msg.str());
  }
}

namespace {

// Inner cubic Aγ³/3 + Bγ²/2 + C in Horner form.
double inner_cubic(double A, double B, double C, double gamma) {
  return (A / 3.0 * gamma + B / 2.0) * gamma * gamma + C;
}

}  // namespace

CoeffSlopes coeff_slopes(const SurfaceSpec& spec) {
  const double e = spec.gamma_end();
  CoeffSlopes s;
  s.dA = 3.0 * (e + 1.0) / (e * e);
  s.dB = -2.0 - 2.0 * s.dA / 3.0;
  return s;
}

CoeffSet coeffs_from_C(const SurfaceSpec& spec, double C) {
  spec.validate();
  const double e = spec.gamma_end();
  // Inner cubic must equal +k at γ=1 and -k at γ=e.
  const double k = spec.two_g1() / spec.abs_degree();

  CoeffSet c;
  c.spec = spec;
  c.C = C;
  // A/3 + B/2 = k - C  and  A e³/3 + B e²/2 = -k - C.
  c.A = 3.0 * (C * (e * e - 1.0) - k * (1.0 + e * e)) / (e * e * (e - 1.0));
  c.B = 2.0 * (k - C) - 2.0 * c.A / 3.0;

  double lo = 1.0;
  double hi = e;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (inner_cubic(c.A, c.B, c.C, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  c.gamma0 = 0.5 * (lo + hi);
  return c;
}

double poly_p(const CoeffSet& c, double gamma) {
  check_gamma(c.spec, gamma);
  return c.spec.d2() * inner_cubic(c.A, c.B, c.C, gamma);
}

double poly_P(const CoeffSet& c, double gamma) {
  check_gamma(c.spec, gamma);
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  return c.spec.d2() * (c.A * (g4 * gamma - 1.0) / 15.0 + c.B * (g4 - 1.0) / 8.0 +
                        c.C * (g2 - 1.0) / 2.0);
}

LinearInC constants_LN(const SurfaceSpec& spec) {
  spec.validate();
  const double e = spec.gamma_end();
  const double e2 = e * e;
  const double e4 = e2 * e2;
  const CoeffSet at0 = coeffs_from_C(spec, 0.0);
  const CoeffSlopes s = coeff_slopes(spec);
  LinearInC out;
  out.L = spec.d2() * (s.dA * (e4 * e - 1.0) / 15.0 + s.dB * (e4 - 1.0) / 8.0 + (e2 - 1.0) / 2.0);
  out.N = spec.d2() * (at0.A * (e4 * e - 1.0) / 15.0 + at0.B * (e4 - 1.0) / 8.0);
  return out;
}

namespace {

struct QFactors {
  double lead;  // d²(e+1)/e²
  double r;     // e/(e+1); the negative root is -r
  double e;
};

QFactors q_factors(const SurfaceSpec& spec) {
  const double e = spec.gamma_end();
  return {spec.d2() * (e + 1.0) / (e * e), e / (e + 1.0), e};
}

}  // namespace

double poly_q(const SurfaceSpec& spec, double gamma) {
  check_gamma(spec, gamma);
  const QFactors f = q_factors(spec);
  return f.lead * (gamma + f.r) * gamma * (gamma - 1.0) * (gamma - f.e);
}

double poly_q_expanded(const SurfaceSpec& spec, double gamma) {
  check_gamma(spec, gamma);
  const CoeffSlopes s = coeff_slopes(spec);
  return spec.d2() * ((s.dA / 3.0 * gamma + s.dB / 2.0) * gamma * gamma * gamma + gamma);
}

double poly_Q(const SurfaceSpec& spec, double gamma) {
  check_gamma(spec, gamma);
  const QFactors f = q_factors(spec);
  // (γ+r)γ(γ-1)(γ-e) = γ⁴ + (r-1-e)γ³ + 0·γ² + r·e·γ
  const double c3 = f.r - 1.0 - f.e;
  const double c1 = f.r * f.e;
  const double g2 = gamma * gamma;
  const double g4 = g2 * g2;
  return f.lead * ((g4 * gamma - 1.0) / 5.0 + c3 * (g4 - 1.0) / 4.0 + c1 * (g2 - 1.0) / 2.0);
}

}  // namespace hek
