#include "hek/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "hek/error.hpp"

namespace hek {

const char* to_string(HcsckVerdict v) noexcept {
  return v == HcsckVerdict::NotHcscK ? "NotHcscK" : "Hcsck";
}

ConeVerdict cone_check(int genus, int degree, double a, double b) {
  if (genus < 2) throw Error(ErrorKind::InvalidInput, "genus must be >= 2");
  if (degree == 0) throw Error(ErrorKind::InvalidInput, "degree must be nonzero");
  ConeVerdict out;
  out.genus = genus;
  out.degree = degree;
  out.a = a;
  out.b = b;
  const double d = degree;
  if (degree < 0) {
    // α = aC + bS_∞ with S_∞² = -d, S_∞·S_0 = 0, C·S = 1.
    out.inequality_values = {2.0 * a * b - d * b * b, b, a - d * b, a, a};
  } else {
    // α = aC + bS_0 with S_0² = d.
    out.inequality_values = {2.0 * a * b + d * b * b, b, a + d * b, a, a + d * b};
  }
  out.raw_positive = std::all_of(out.inequality_values.begin(), out.inequality_values.end(),
                                 [](double x) { return x > 0.0; });
  out.simplified = a > 0.0 && b > 0.0;
  out.is_kahler = out.raw_positive && out.simplified;
  return out;
}

ClassIntegrals class_integrals(const ProfileSolution& prof) {
  const SurfaceSpec& spec = prof.spec();
  const double d = spec.degree;
  // τ = f'(s) at the two ends of the momentum interval.
  const double tau_first = -(prof.gamma.front() - 1.0) / d;
  const double tau_last = -(prof.gamma.back() - 1.0) / d;
  ClassIntegrals out;
  out.fibre_area = 2.0 * std::numbers::pi * (std::max(tau_first, tau_last) - std::min(tau_first, tau_last));
  // The section S_∞ (d < 0) or S_0 (d > 0) sits at γ = gamma_end in both cases.
  out.section_area = 2.0 * std::numbers::pi * (1.0 - d * tau_last);
  out.section_label = spec.section_label();
  return out;
}

double chern_identity_residual(const ProfileSolution& prof, double lambda_shift) {
  const SurfaceSpec& spec = prof.spec();
  const CoeffSet& c = prof.coeffs();
  const std::size_t n = prof.gamma.size();
  const double h = (prof.gamma.back() - prof.gamma.front()) / static_cast<double>(n - 1);
  const double d2 = spec.d2();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double g = prof.gamma[i];
    const double f = prof.phi[i];
    const double f1 = fd_first(prof.phi, i, h);
    const double f2 = fd_second(prof.phi, i, h);
    const double lhs = g * (d2 * f + spec.two_g1() * g) * f2 + d2 * f1 * (f1 * g - f);
    const double rhs = (c.A * g + c.B + lambda_shift) * g * g * g;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

RescaledClass rescale(const ProfileSolution& prof, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidInput, "rescaling factor must be positive");
  RescaledClass out;
  out.a = a;
  out.b = a * prof.spec().m();
  out.lambda_factor = prof.spec().d2() / (2.0 * a * a);
  return out;
}

namespace {

double gauss_integral(double lo, double hi, const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
}

}  // namespace

double reduced_volume_integral(const SurfaceSpec& spec, const std::function<double(double)>& h) {
  const double e = spec.gamma_end();
  const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return 2.0 * four_pi_sq / spec.abs_degree() *
         gauss_integral(1.0, e, [&](double g) { return h(g) * g; });
}

FutakiReport bando_futaki(const CoeffSet& coeffs, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidInput, "class coefficient a must be positive");
  const SurfaceSpec& spec = coeffs.spec;
  const double e = spec.gamma_end();
  auto lambda = [&](double g) { return coeffs.A * g + coeffs.B; };

  FutakiReport r;
  r.weight_integral = gauss_integral(1.0, e, [](double g) { return g; });
  r.lambda0 = gauss_integral(1.0, e, [&](double g) { return lambda(g) * g; }) / r.weight_integral;
  r.deviation = gauss_integral(1.0, e, [&](double g) {
                  const double dl = lambda(g) - r.lambda0;
                  return dl * dl * g;
                }) / r.weight_integral;
  const double ad = spec.abs_degree();
  r.prefactor = ad * ad * ad * r.weight_integral / (2.0 * a * a);
  r.futaki_value = r.deviation == 0.0 ? 0.0 : -r.prefactor * r.deviation;
  r.verdict = r.deviation > kHcsckThreshold ? HcsckVerdict::NotHcscK : HcsckVerdict::Hcsck;
  return r;
}

FutakiReport bando_futaki(const ProfileSolution& prof) { return bando_futaki(prof.coeffs()); }

}  // namespace hek
