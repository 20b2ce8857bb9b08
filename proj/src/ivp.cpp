#include "hek/ivp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "hek/error.hpp"

namespace hek {

const char* to_string(IvpStatus status) noexcept {
  return status == IvpStatus::Complete ? "Complete" : "Breakdown";
}

double IvpTrajectory::end_value() const { return complete() ? v_values.back() : 0.0; }

double ivp_rhs(const CoeffSet& c, double gamma, double v) {
  const double root_v = std::sqrt(std::max(v, 0.0));
  const double inner = (c.A / 3.0 * gamma + c.B / 2.0) * gamma * gamma + c.C;
  return c.spec.two_g1() * std::numbers::sqrt2 * root_v + c.spec.d2() * inner * gamma;
}

namespace {

using State = std::array<double, 1>;
using Stepper = boost::numeric::odeint::runge_kutta_dopri5<State>;

struct Step {
  double v = 0.0;
  double dv = 0.0;
  double err = 0.0;
};

class Integrator {
 public:
  Integrator(const CoeffSet& c) : coeffs_(c) {}

  Step step(double gamma, double v, double dv, double h) {
    State in{v}, dxdt_in{dv}, out{}, dxdt_out{}, err{};
    auto system = [this](const State& x, State& dxdt, double t) {
      dxdt[0] = ivp_rhs(coeffs_, t, x[0]);
    };
    stepper_.do_step(system, in, dxdt_in, gamma, out, dxdt_out, h, err);
    return {out[0], dxdt_out[0], err[0]};
  }

 private:

  const CoeffSet& coeffs_;
  Stepper stepper_;
};

void check_arguments(double tol, int dense_count) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) {
    std::ostringstream msg;
    msg << "integration tolerance " << tol << " outside [1e-14, 1e-6]";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  if (dense_count < 16) {
    throw Error(ErrorKind::InvalidInput, "dense output needs at least 16 points");
  }
}

std::size_t segment_index(const std::vector<Knot>& knots, double gamma) {
  auto it = std::upper_bound(knots.begin(), knots.end(), gamma,
                             [](double g, const Knot& k) { return g < k.gamma; });
  std::size_t i = static_cast<std::size_t>(it - knots.begin());
  if (i == 0) return 0;
  if (i >= knots.size()) return knots.size() - 2;
  return i - 1;
}

}  // namespace

double hermite_eval(const std::vector<Knot>& knots, double gamma) {
  if (knots.size() == 1) return knots.front().v;
  const std::size_t i = segment_index(knots, gamma);
  const Knot& k0 = knots[i];
  const Knot& k1 = knots[i + 1];
  const double h = k1.gamma - k0.gamma;
  const double t = (gamma - k0.gamma) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * k0.v + h10 * h * k0.dv + h01 * k1.v + h11 * h * k1.dv;
}

double hermite_derivative(const std::vector<Knot>& knots, double gamma) {
  if (knots.size() == 1) return knots.front().dv;
  const std::size_t i = segment_index(knots, gamma);
  const Knot& k0 = knots[i];
  const Knot& k1 = knots[i + 1];
  const double h = k1.gamma - k0.gamma;
  const double t = (gamma - k0.gamma) / h;
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return d00 * k0.v + d10 * k0.dv + d01 * k1.v + d11 * k1.dv;
}

IvpTrajectory integrate(const CoeffSet& coeffs, double tol, int dense_count) {
  check_arguments(tol, dense_count);
  const SurfaceSpec& spec = coeffs.spec;
  const double e = spec.gamma_end();
  const double v1 = spec.v_start();
  const double floor = kBreakdownFloorRel * v1;
  const double near = kNearBreakdownRel * v1;
  const double h_min = 1e-14 * e;

  IvpTrajectory traj;
  traj.coeffs = coeffs;
  traj.tol = tol;
  traj.breakdown_floor = floor;

  const std::size_t n = static_cast<std::size_t>(dense_count);
  const double spacing = (e - 1.0) / static_cast<double>(n - 1);
  auto stop_at = [&](std::size_t j) { return j + 1 == n ? e : 1.0 + spacing * static_cast<double>(j); };

  Integrator rk(coeffs);
  double g = 1.0;
  double v = v1;
  double dv = ivp_rhs(coeffs, g, v);
  traj.knots.push_back({g, v, dv});
  traj.gamma_grid.reserve(n);
  traj.v_values.reserve(n);
  traj.gamma_grid.push_back(g);
  traj.v_values.push_back(v);

  std::size_t next = 1;
  double h = std::min(1e-2, spacing);
  while (next < n) {
    const double stop = stop_at(next);
    const bool hits_stop = h >= stop - g;
    const double h_try = hits_stop ? stop - g : h;

    const Step s = rk.step(g, v, dv, h_try);
    const double err = std::abs(s.err) / (tol * std::max(1.0, std::abs(v)));
    const bool crossed = !(s.v >= floor);
    const bool near_floor = v < near && dv < 0.0;

    if (crossed && (err <= 1.0 || near_floor)) {
      // Bisect the single-step map on [0, h_try] for v = floor.
      double lo = 0.0;
      double hi = h_try;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (rk.step(g, v, dv, mid).v >= floor) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double g_star = std::min(g + 0.5 * (lo + hi), e);
      const double slope = ivp_rhs(coeffs, g_star, floor);
      if (!(slope < 0.0)) {
        std::ostringstream msg;
        msg << "v reached the breakdown floor at gamma = " << g_star
            << " with non-negative slope " << slope;
        throw Error(ErrorKind::StepCollapse, msg.str());
      }
      traj.status = IvpStatus::Breakdown;
      traj.gamma_star = g_star;
      traj.knots.push_back({g_star, 0.0, ivp_rhs(coeffs, g_star, 0.0)});
      break;
    }

    const double growth = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    if (err > 1.0 || crossed) {
      ++traj.rejected_steps;
      h = h_try * std::min(growth, 0.5);
      if (h < h_min) {
        std::ostringstream msg;
        msg << "step size underflow at gamma = " << g << " (v = " << v << ")";
        throw Error(ErrorKind::StepCollapse, msg.str());
      }
      continue;
    }

    ++traj.accepted_steps;
    g = hits_stop ? stop : g + h_try;
    v = s.v;
    dv = s.dv;
    traj.knots.push_back({g, v, dv});
    h = std::max(h, h_try) * growth;
    if (hits_stop) {
      traj.gamma_grid.push_back(g);
      traj.v_values.push_back(v);
      ++next;
    }
  }

  if (traj.status == IvpStatus::Complete) {
    traj.gamma_star = e;
    return traj;
  }

  // Resample uniformly over [1, gamma_star].
  traj.gamma_grid.clear();
  traj.v_values.clear();
  const double gs = traj.gamma_star;
  const double ds = (gs - 1.0) / static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const double gj = j + 1 == n ? gs : 1.0 + ds * static_cast<double>(j);
    traj.gamma_grid.push_back(gj);
    traj.v_values.push_back(j + 1 == n ? 0.0 : std::max(0.0, hermite_eval(traj.knots, gj)));
  }
  return traj;
}

UExtended::UExtended(IvpTrajectory traj) : traj_(std::move(traj)) {}

double UExtended::operator()(double gamma) const {
  check_gamma(traj_.coeffs.spec, gamma);
  if (!traj_.complete() && gamma >= traj_.gamma_star) return 0.0;
  return std::max(0.0, hermite_eval(traj_.knots, gamma));
}

double UExtended::derivative(double gamma) const {
  check_gamma(traj_.coeffs.spec, gamma);
  if (!traj_.complete() && gamma >= traj_.gamma_star) return 0.0;
  return hermite_derivative(traj_.knots, gamma);
}

UExtended u_extended(const CoeffSet& coeffs, double tol) {
  return UExtended(integrate(coeffs, tol, 16));
}

}  // namespace hek
