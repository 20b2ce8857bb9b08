#include "hek/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hek/error.hpp"

namespace hek {

double fd_left_slope(const std::vector<double>& f, double h) {
  return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
}

double fd_right_slope(const std::vector<double>& f, double h) {
  const std::size_t n = f.size() - 1;
  return (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]) /
         (12.0 * h);
}

double fd_first(const std::vector<double>& f, std::size_t i, double h) {
  return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
}

double fd_second(const std::vector<double>& f, std::size_t i, double h) {
  return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
}

double lambda_of(const CoeffSet& coeffs, double gamma) {
  check_gamma(coeffs.spec, gamma);
  return coeffs.A * gamma + coeffs.B;
}

double expected_phi_prime_left(const SurfaceSpec& spec) { return 1.0 / spec.abs_degree(); }
double expected_phi_prime_right(const SurfaceSpec& spec) { return -1.0 / spec.abs_degree(); }

double ProfileSolution::phi_at(double g) const {
  const SurfaceSpec& sp = spec();
  g = std::clamp(g, 1.0, sp.gamma_end());
  const double vg = std::max(0.0, hermite_eval(bvp.trajectory.knots, g));
  return (std::sqrt(2.0 * vg) - sp.two_g1() * g) / sp.d2();
}

ProfileSolution recover_phi(const BvpSolution& bvp) {
  if (!bvp.trajectory.complete()) {
    throw Error(ErrorKind::InvalidInput, "profile recovery needs a complete trajectory");
  }
  const SurfaceSpec& spec = bvp.spec;
  ProfileSolution prof;
  prof.bvp = bvp;
  prof.gamma = bvp.trajectory.gamma_grid;
  prof.v = bvp.trajectory.v_values;
  const std::size_t n = prof.gamma.size();
  prof.phi.resize(n);
  prof.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double vi = prof.v[i];
    if (vi < 0.0) {
      std::ostringstream msg;
      msg << "v = " << vi << " < 0 at gamma = " << prof.gamma[i];
      throw Error(ErrorKind::NegativeDiscriminant, msg.str());
    }
    prof.phi[i] = (std::sqrt(2.0 * vi) - spec.two_g1() * prof.gamma[i]) / spec.d2();
    prof.lambda[i] = bvp.coeffs.A * prof.gamma[i] + bvp.coeffs.B;
  }
  const double h = (prof.gamma.back() - prof.gamma.front()) / static_cast<double>(n - 1);
  prof.phi_prime_left = fd_left_slope(prof.phi, h);
  prof.phi_prime_right = fd_right_slope(prof.phi, h);
  prof.s_samples = reconstruct_s(prof, 0.5 * (1.0 + spec.gamma_end()));
  return prof;
}

std::vector<SSample> reconstruct_s(const ProfileSolution& prof, double gamma_base, double ds) {
  const SurfaceSpec& spec = prof.spec();
  const double e = spec.gamma_end();
  if (!(gamma_base > 1.0 && gamma_base < e)) {
    std::ostringstream msg;
    msg << "base point " << gamma_base << " is not interior to (1, " << e << ")";
    throw Error(ErrorKind::Domain, msg.str());
  }
  const double phi_max = *std::max_element(prof.phi.begin(), prof.phi.end());
  const double guard = kGuardBandRel * phi_max;
  const double ad = spec.abs_degree();
  const double tau_scale = -1.0 / spec.degree;

  auto rate = [&](double g) { return ad * prof.phi_at(g); };
  auto sample = [&](double s, double g) {
    return SSample{s, tau_scale * (g - 1.0), prof.phi_at(g), g};
  };

  // Integrates dγ/ds = |d|φ(γ) away from the base point until φ drops below the guard.
  auto sweep = [&](double dir) {
    std::vector<SSample> out;
    double g = gamma_base;
    double s = 0.0;
    constexpr int kMaxSteps = 1000000;
    for (int i = 0; i < kMaxSteps; ++i) {
      const double h = dir * ds;
      const double k1 = rate(g);
      const double k2 = rate(g + 0.5 * h * k1);
      const double k3 = rate(g + 0.5 * h * k2);
      const double k4 = rate(g + h * k3);
      g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s += h;
      if (prof.phi_at(g) < guard) break;
      out.push_back(sample(s, g));
    }
    return out;
  };

  std::vector<SSample> left = sweep(-1.0);
  std::vector<SSample> right = sweep(1.0);
  std::vector<SSample> all;
  all.reserve(left.size() + right.size() + 1);
  all.insert(all.end(), left.rbegin(), left.rend());
  all.push_back(sample(0.0, gamma_base));
  all.insert(all.end(), right.begin(), right.end());
  if (all.size() < 8) {
    throw Error(ErrorKind::GuardBandTooWide, "fewer than 8 samples outside the guard band");
  }
  return all;
}

double ode_residual(const ProfileSolution& prof) {
  const SurfaceSpec& spec = prof.spec();
  const CoeffSet& c = prof.coeffs();
  const std::size_t n = prof.gamma.size();
  const double h = (prof.gamma.back() - prof.gamma.front()) / static_cast<double>(n - 1);
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double g = prof.gamma[i];
    const double lhs = (spec.two_g1() * g + spec.d2() * prof.phi[i]) * fd_first(prof.phi, i, h);
    const double g2 = g * g;
    const double rhs = c.A * g2 * g2 / 3.0 + c.B * g2 * g / 2.0 + c.C * g;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace hek
