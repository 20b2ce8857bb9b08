#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hek/profile.hpp"

namespace hek::testing {

/// 2(2π)² ∫ h(γ(s))·γ(s)·φ(s) ds over the reconstructed fibre coordinate:
/// trapezoid on the samples plus exponential tails past the guard band,
/// where φ decays like exp(-|d|·|φ'(end)|·|s|).
inline double s_space_volume_integral(const ProfileSolution& prof,
                                      const std::function<double(double)>& h) {
  const auto& ss = prof.s_samples;
  auto f = [&](const SSample& x) { return h(x.gamma) * x.gamma * x.phi; };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
    sum += 0.5 * (ss[i + 1].s - ss[i].s) * (f(ss[i]) + f(ss[i + 1]));
  }
  const double ad = prof.spec().abs_degree();
  const double rate_left = ad * std::abs(prof.phi_prime_left);
  const double rate_right = ad * std::abs(prof.phi_prime_right);
  sum += f(ss.front()) / rate_left + f(ss.back()) / rate_right;
  return 2.0 * 4.0 * std::numbers::pi * std::numbers::pi * sum;
}

/// Uniformly spaced points lo, ..., hi.
inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace hek::testing
