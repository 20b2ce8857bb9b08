// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hek/cli.hpp"
#include "hek/error.hpp"
#include "oracles.hpp"

using namespace hek;
using hek::testing::linspace;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kMs{0.25, 0.5, 1.0, 2.0, 5.0, 10.0};

std::string short_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Case {
  int g;
  int d;
  double m;
  std::string name() const {
    std::ostringstream s;
    s << "(g=" << g << ",d=" << d << ",m=" << m << ")";
    return s.str();
  }
  SurfaceSpec spec() const { return SurfaceSpec::from_m(g, d, m); }
};

std::vector<Case> basic_cases() {
  std::vector<Case> out;
  for (double m : kMs) out.push_back({2, -1, m});
  return out;
}

std::vector<Case> full_matrix() {
  std::vector<Case> out = basic_cases();
  for (auto [g, d] : {std::pair{3, -2}, std::pair{2, 1}, std::pair{4, -1}}) {
    for (double m : kMs) out.push_back({g, d, m});
  }
  return out;
}

// Tracks failures and the worst observed value of each named quantity.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void worst(const std::string& key, double value) {
    auto [it, inserted] = worst_.emplace(key, value);
    if (!inserted) it->second = std::max(it->second, value);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    const char* sep = "";
    for (const auto& [k, v] : worst_) {
      s << sep << k << "=" << short_real(v);
      sep = ", ";
    }
    for (const auto& n : notes_) {
      s << sep << n;
      sep = ", ";
    }
    if (failed_ > 0) {
      s << sep << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  int failed_ = 0;
  std::vector<std::string> failures_;
  std::map<std::string, double> worst_;
  std::vector<std::string> notes_;
};

std::map<std::string, ProfileSolution> g_profiles;
std::map<std::string, double> g_thresholds;

const ProfileSolution& profile(const Case& c) {
  auto it = g_profiles.find(c.name());
  if (it == g_profiles.end()) it = g_profiles.emplace(c.name(), recover_phi(solve_bvp(c.spec()))).first;
  return it->second;
}

double threshold(const Case& c) {
  auto it = g_thresholds.find(c.name());
  if (it == g_thresholds.end()) it = g_thresholds.emplace(c.name(), find_M(c.spec())).first;
  return it->second;
}

double v_end(const SurfaceSpec& s, double C) {
  return integrate(coeffs_from_C(s, C), 1e-12, 16).end_value();
}

void criterion_1(Check& ck) {
  for (const Case& c : basic_cases()) {
    const ProfileSolution& p = profile(c);
    const double rel = p.bvp.residuals.end_rel;
    ck.worst("max rel residual", rel);
    ck.require(rel <= 1e-9, c.name() + " residual");
    ck.require(p.bvp.c_star > 2.0, c.name() + " C*<=2");
  }
  double lowest = 1e300;
  for (const Case& c : basic_cases()) lowest = std::min(lowest, profile(c).bvp.c_star);
  ck.note("min C*=" + short_real(lowest));
}

void criterion_2(Check& ck) {
  double gap = 1e300;
  for (const Case& c : basic_cases()) {
    const LinearInC ln = constants_LN(c.spec());
    const double bound = -ln.N / ln.L;
    gap = std::min(gap, profile(c).bvp.c_star - bound);
    ck.require(profile(c).bvp.c_star > bound, c.name());
  }
  ck.note("min C*+N/L=" + short_real(gap));
}

void criterion_3(Check& ck) {
  for (const Case& c : basic_cases()) {
    const double M = threshold(c);
    const SurfaceSpec s = c.spec();
    ck.require(M > 2.0, c.name() + " M<=2");
    ck.require(profile(c).bvp.c_star < M, c.name() + " C*>=M");
    ck.require(!integrate(coeffs_from_C(s, M + 0.1), 1e-12, 16).complete(), c.name() + " M+0.1 completes");
    ck.require(integrate(coeffs_from_C(s, M - 0.1), 1e-12, 16).complete(), c.name() + " M-0.1 breaks");
  }
  ck.note("M(1)=" + short_real(threshold({2, -1, 1.0})));
}

void criterion_4(Check& ck) {
  double worst_ratio = 0.0;
  for (const Case& c : basic_cases()) {
    const SurfaceSpec s = c.spec();
    const LinearInC ln = constants_LN(s);
    double prev = -1.0;
    for (double C : {-1.0, -10.0, -100.0, -1000.0}) {
      const double v = v_end(s, C);
      ck.require(v > prev, c.name() + " not increasing at C=" + format_real(C));
      ck.require(v > s.v_start() + ln.L * C + ln.N, c.name() + " below linear bound at C=" + format_real(C));
      prev = v;
    }
    const double M = threshold(c);
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 5; ++k) {
      const double v = v_end(s, M - std::pow(10.0, -k));
      ck.require(v < last, c.name() + " not decreasing at k=" + std::to_string(k));
      last = v;
    }
    worst_ratio = std::max(worst_ratio, last / s.v_target());
    ck.require(last < 0.05 * s.v_target(), c.name() + " final value not small");
  }
  ck.note("max v(M-1e-5)/target=" + short_real(worst_ratio));
}

void criterion_5(Check& ck) {
  int pairs = 0;
  for (const Case& c : basic_cases()) {
    const SurfaceSpec s = c.spec();
    const double M = threshold(c);
    const double e = s.gamma_end();
    const auto cs = linspace(-5.0, M - 0.05, 5);
    std::vector<double> gs;
    for (double t : {0.2, 0.4, 0.6, 0.8, 1.0}) gs.push_back(1.0 + t * (e - 1.0));
    std::vector<UExtended> us;
    for (double C : cs) us.push_back(u_extended(coeffs_from_C(s, C), 1e-12));
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        for (double g : gs) {
          const double v1 = us[i](g);
          const double v2 = us[j](g);
          ck.require(v2 < v1, c.name() + " monotone");
          ck.require(v1 >= v2 - poly_Q(s, g) * (cs[j] - cs[i]) - 1e-8, c.name() + " gap bound");
          ++pairs;
        }
      }
    }
    double prev = e;
    for (double C : {M, M + 0.05, M + 0.5, M + 5.0, M + 50.0}) {
      const IvpTrajectory t = integrate(coeffs_from_C(s, C), 1e-12, 16);
      if (C == M && t.complete()) continue;
      ck.require(!t.complete(), c.name() + " no breakdown above M");
      ck.require(t.gamma_star < prev, c.name() + " breakdown order");
      prev = t.gamma_star;
    }
  }
  ck.note(std::to_string(pairs) + " (C1,C2,gamma) checks");
}

void criterion_6(Check& ck) {
  for (const Case& c : full_matrix()) {
    const ProfileSolution& p = profile(c);
    const SurfaceSpec s = c.spec();
    ck.worst("|phi(1)|", std::abs(p.phi.front()));
    ck.worst("|phi(end)|", std::abs(p.phi.back()));
    const double l = std::abs(p.phi_prime_left - expected_phi_prime_left(s));
    const double r = std::abs(p.phi_prime_right - expected_phi_prime_right(s));
    ck.worst("slope err", std::max(l, r));
    ck.require(std::abs(p.phi.front()) <= 1e-8 && std::abs(p.phi.back()) <= 1e-8, c.name() + " endpoint value");
    ck.require(l <= 1e-5 && r <= 1e-5, c.name() + " endpoint slope");
    bool positive = true;
    for (std::size_t i = 1; i + 1 < p.phi.size(); ++i) positive = positive && p.phi[i] > 0.0;
    for (const SSample& x : p.s_samples) positive = positive && x.phi > 0.0;
    ck.require(positive, c.name() + " interior positivity");
  }
}

void criterion_7(Check& ck) {
  double weakest_control = 1e300;
  for (const Case& c : full_matrix()) {
    const ProfileSolution& p = profile(c);
    const double r = chern_identity_residual(p);
    const double shifted = chern_identity_residual(p, 1.0);
    ck.worst("max residual", r);
    weakest_control = std::min(weakest_control, shifted);
    ck.require(r <= 1e-3, c.name() + " residual");
    ck.require(shifted >= 1.0, c.name() + " control");
  }
  ck.note("min shifted=" + short_real(weakest_control));
}

void criterion_8(Check& ck) {
  for (const Case& c : full_matrix()) {
    const ClassIntegrals ci = class_integrals(profile(c));
    const double fibre = 2.0 * kPi * c.m;
    const double section = 2.0 * kPi * (1.0 + std::abs(c.d) * c.m);
    const double ef = std::abs(ci.fibre_area - fibre) / fibre;
    const double es = std::abs(ci.section_area - section) / section;
    ck.worst("rel err", std::max(ef, es));
    ck.require(ef <= 1e-8 && es <= 1e-8, c.name());
    ck.require(std::string(ci.section_label) == (c.d < 0 ? "S_inf" : "S_0"), c.name() + " label");
  }
}

void criterion_9(Check& ck) {
  for (const Case& c : full_matrix()) {
    const ProfileSolution& p = profile(c);
    const FutakiReport r = bando_futaki(p);
    ck.require(r.futaki_value < 0.0, c.name() + " futaki sign");
    ck.require(r.verdict == HcsckVerdict::NotHcscK, c.name() + " verdict");
    const CoeffSet& k = p.coeffs();
    const std::function<double(double)> one = [](double) { return 1.0; };
    const std::function<double(double)> lam = [&](double x) { return k.A * x + k.B; };
    for (const auto* h : {&one, &lam}) {
      const double reduced = reduced_volume_integral(p.spec(), *h);
      const double oracle = hek::testing::s_space_volume_integral(p, *h);
      const double rel = std::abs(oracle - reduced) / std::abs(reduced);
      ck.worst("1D vs 2D rel", rel);
      ck.require(rel <= 1e-4, c.name() + " 2D oracle");
    }
  }
}

void criterion_10(Check& ck) {
  std::mt19937 rng(12345);
  for (const Case& c : full_matrix()) {
    const SurfaceSpec s = c.spec();
    const double e = s.gamma_end();
    const double k = s.two_g1() * s.abs_degree();
    const CoeffSet at = profile(c).coeffs();
    const double ep = std::max(std::abs(poly_p(at, 1.0) - k), std::abs(poly_p(at, e) + k)) / k;
    ck.worst("p endpoint rel", ep);
    ck.require(ep <= 1e-12, c.name() + " p endpoints");
    const LinearInC ln = constants_LN(s);
    const double qe = std::abs(poly_Q(s, e) - ln.L) / std::max(1.0, std::abs(ln.L));
    ck.worst("Q(e)-L", qe);
    ck.require(qe <= 1e-10, c.name() + " Q(e)");
    const double a0 = std::abs(coeffs_from_C(s, -ln.N / ln.L).A);
    ck.worst("|A(-N/L)|", a0);
    ck.require(a0 <= 1e-10, c.name() + " A(-N/L)");
    std::uniform_real_distribution<double> gd(1.0, e);
    const double scale = s.d2() * std::pow(e, 4);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double g = gd(rng);
      worst = std::max(worst, std::abs(poly_q(s, g) - poly_q_expanded(s, g)) / scale);
    }
    ck.worst("q forms rel", worst);
    ck.require(worst <= 1e-12, c.name() + " q forms");
  }
}

// Numeric leaves of two documents, ignoring the listed metadata keys.
void compare_docs(const Json& a, const Json& b, const std::string& path, Check& ck, double& worst) {
  static const std::vector<std::string> kMetadata{"degree", "section_label"};
  if (a.type() != b.type()) {
    if (!(a.is_number() && b.is_number())) {
      ck.require(false, path + " type");
      return;
    }
  }
  if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (std::find(kMetadata.begin(), kMetadata.end(), it.key()) != kMetadata.end()) continue;
      if (!b.contains(it.key())) {
        ck.require(false, path + "." + it.key() + " missing");
        continue;
      }
      compare_docs(it.value(), b.at(it.key()), path + "." + it.key(), ck, worst);
    }
  } else if (a.is_array()) {
    if (a.size() != b.size()) {
      ck.require(false, path + " length");
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) compare_docs(a[i], b[i], path, ck, worst);
  } else if (a.is_number()) {
    const double x = a.get<double>();
    const double y = b.get<double>();
    const double diff = std::abs(x - y) / std::max(1.0, std::abs(x));
    worst = std::max(worst, diff);
    ck.require(diff <= 1e-12, path);
  } else {
    ck.require(a == b, path);
  }
}

void criterion_11(Check& ck) {
  int compared = 0;
  for (const Case& c : full_matrix()) {
    const Case flipped{c.g, -c.d, c.m};
    const ProfileSolution& p = profile(c);
    const ProfileSolution& q = profile(flipped);
    double worst = 0.0;
    compare_docs(solve_document(p), solve_document(q), c.name(), ck, worst);
    ck.require(p.s_samples.size() == q.s_samples.size(), c.name() + " s-sample count");
    for (std::size_t i = 0; i < std::min(p.s_samples.size(), q.s_samples.size()); ++i) {
      const SSample& x = p.s_samples[i];
      const SSample& y = q.s_samples[i];
      const double diff = std::max({std::abs(x.s - y.s), std::abs(x.phi - y.phi), std::abs(x.gamma - y.gamma),
                                    std::abs(std::abs(x.tau) - std::abs(y.tau))});
      worst = std::max(worst, diff);
      ck.require(diff <= 1e-12, c.name() + " s-samples");
    }
    ck.require(p.spec().section_label() != q.spec().section_label(), c.name() + " labels");
    ck.worst("max field diff", worst);
    ++compared;
  }
  ck.note(std::to_string(compared) + " pairs");
}

void criterion_12(Check& ck) {
  for (const Case& c : full_matrix()) {
    RunConfig cfg;
    cfg.command = Command::Solve;
    cfg.genus = c.g;
    cfg.degree = c.d;
    cfg.m = c.m;
    std::ostringstream out1, out2, err;
    const int r1 = run(cfg, out1, err);
    const int r2 = run(cfg, out2, err);
    ck.require(r1 == 0 && r2 == 0, c.name() + " exit code");
    ck.require(out1.str() == out2.str(), c.name() + " bytes differ");
    cfg.format = Format::Csv;
    std::ostringstream csv1, csv2;
    run(cfg, csv1, err);
    run(cfg, csv2, err);
    ck.require(csv1.str() == csv2.str(), c.name() + " csv bytes differ");
    const Json report = verify_document(Json::parse(out1.str()));
    ck.worst("verify discrepancy", report.at("max_discrepancy").get<double>());
    ck.require(report.at("passed").get<bool>(), c.name() + " verify");
  }
}

struct Criterion {
  int id;
  const char* title;
  void (*body)(Check&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "existence and target, C* > 2", criterion_1},
      {2, "C* > -N/L", criterion_2},
      {3, "threshold M separates Complete from Breakdown", criterion_3},
      {4, "limits as C -> -inf and C -> M-", criterion_4},
      {5, "monotonicity and gap certificates", criterion_5},
      {6, "profile boundary conditions", criterion_6},
      {7, "pointwise Chern identity", criterion_7},
      {8, "class integrals", criterion_8},
      {9, "Bando-Futaki obstruction and 2D oracle", criterion_9},
      {10, "coefficient algebra", criterion_10},
      {11, "degree-sign equivalence", criterion_11},
      {12, "determinism and verify round-trip", criterion_12},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Check ck;
    try {
      c.body(ck);
    } catch (const std::exception& e) {
      ck.require(false, std::string("exception: ") + e.what());
    }
    std::printf("[%s] AC%02d %s | %s\n", ck.ok() ? "PASS" : "FAIL", c.id, c.title, ck.summary().c_str());
    std::fflush(stdout);
    if (!ck.ok()) ++failed;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
