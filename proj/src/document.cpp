#include "hek/document.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hek/error.hpp"

namespace hek {

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(std::ostringstream& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string pad_in(static_cast<std::size_t>(2 * depth + 2), ' ');
  switch (j.type()) {
    case Json::value_t::null: out << "null"; break;
    case Json::value_t::boolean: out << (j.get<bool>() ? "true" : "false"); break;
    case Json::value_t::number_integer: out << j.get<std::int64_t>(); break;
    case Json::value_t::number_unsigned: out << j.get<std::uint64_t>(); break;
    case Json::value_t::number_float: out << format_real(j.get<double>()); break;
    case Json::value_t::string: out << j.dump(); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        break;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out << '[';
      bool first = true;
      for (const Json& item : j) {
        if (!first) out << ',';
        if (flat) {
          if (!first) out << ' ';
        } else {
          out << '\n' << pad_in;
        }
        write(out, item, depth + 1);
        first = false;
      }
      if (!flat) out << '\n' << pad;
      out << ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ',';
        out << '\n' << pad_in << Json(it.key()).dump() << ": ";
        write(out, it.value(), depth + 1);
        first = false;
      }
      out << '\n' << pad << '}';
      break;
    }
    default: out << "null"; break;
  }
}

double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::InvalidInput, std::string("solve document lacks numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

std::vector<double> require_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(ErrorKind::InvalidInput, std::string("solve document lacks array '") + key + "'");
  }
  std::vector<double> out;
  out.reserve(j.at(key).size());
  for (const Json& x : j.at(key)) {
    if (!x.is_number()) throw Error(ErrorKind::InvalidInput, std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

const Json& require_object(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw Error(ErrorKind::InvalidInput, std::string("solve document lacks object '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

std::string dump_json(const Json& doc) {
  std::ostringstream out;
  write(out, doc, 0);
  out << '\n';
  return out.str();
}

Json surface_json(const SurfaceSpec& spec) {
  Json j;
  j["genus"] = spec.genus;
  j["degree"] = spec.degree;
  j["a"] = spec.a;
  j["b"] = spec.b;
  j["m"] = spec.m();
  j["gamma_end"] = spec.gamma_end();
  j["section_label"] = spec.section_label();
  return j;
}

Json residuals_json(const ProfileSolution& prof) {
  const SurfaceSpec& spec = prof.spec();
  const ShootResiduals r = shoot_residuals(prof.bvp.trajectory);
  double min_interior_phi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < prof.phi.size(); ++i) min_interior_phi = std::min(min_interior_phi, prof.phi[i]);
  Json j;
  j["target"] = r.target;
  j["end_abs"] = r.end_abs;
  j["end_rel"] = r.end_rel;
  j["slope_start"] = r.slope_start;
  j["slope_end"] = r.slope_end;
  j["interior_margin"] = r.interior_margin;
  j["phi_left"] = prof.phi.front();
  j["phi_right"] = prof.phi.back();
  j["min_interior_phi"] = min_interior_phi;
  j["phi_prime_left"] = prof.phi_prime_left;
  j["phi_prime_right"] = prof.phi_prime_right;
  j["phi_prime_left_error"] = std::abs(prof.phi_prime_left - expected_phi_prime_left(spec));
  j["phi_prime_right_error"] = std::abs(prof.phi_prime_right - expected_phi_prime_right(spec));
  j["ode_residual"] = ode_residual(prof);
  j["chern_residual"] = chern_identity_residual(prof);
  return j;
}

Json futaki_json(const FutakiReport& report) {
  Json j;
  j["lambda0"] = report.lambda0;
  j["deviation"] = report.deviation;
  j["weight_integral"] = report.weight_integral;
  j["prefactor"] = report.prefactor;
  j["futaki_value"] = report.futaki_value;
  j["verdict"] = to_string(report.verdict);
  return j;
}

Json cone_json(const ConeVerdict& verdict) {
  Json j;
  j["genus"] = verdict.genus;
  j["degree"] = verdict.degree;
  j["a"] = verdict.a;
  j["b"] = verdict.b;
  Json values = Json::array();
  for (double x : verdict.inequality_values) values.push_back(x);
  j["inequality_values"] = values;
  j["raw_positive"] = verdict.raw_positive;
  j["simplified"] = verdict.simplified;
  j["agrees"] = verdict.agrees();
  j["is_kahler"] = verdict.is_kahler;
  return j;
}

Json class_integrals_json(const ClassIntegrals& ci) {
  Json j;
  j["fibre_area"] = ci.fibre_area;
  j["section_area"] = ci.section_area;
  j["section_label"] = ci.section_label;
  return j;
}

Json solve_document(const ProfileSolution& prof) {
  const BvpSolution& bvp = prof.bvp;
  const IvpTrajectory& traj = bvp.trajectory;
  const LinearInC ln = constants_LN(bvp.spec);

  Json doc;
  doc["command"] = "solve";
  doc["surface"] = surface_json(bvp.spec);

  Json solver;
  solver["tol"] = bvp.tol;
  solver["ivp_tol"] = bvp.ivp_tol;
  solver["grid"] = prof.gamma.size();
  solver["breakdown_floor"] = traj.breakdown_floor;
  solver["breakdown_floor_rel"] = kBreakdownFloorRel;
  solver["near_breakdown_rel"] = kNearBreakdownRel;
  solver["bracket_lo"] = bvp.bracket_lo;
  solver["bracket_hi"] = bvp.bracket_hi;
  solver["iterations"] = bvp.iterations;
  solver["accepted_steps"] = traj.accepted_steps;
  solver["rejected_steps"] = traj.rejected_steps;
  doc["solver"] = solver;

  Json coeffs;
  coeffs["Cstar"] = bvp.c_star;
  coeffs["A"] = bvp.coeffs.A;
  coeffs["B"] = bvp.coeffs.B;
  coeffs["gamma0"] = bvp.coeffs.gamma0;
  coeffs["L"] = ln.L;
  coeffs["N"] = ln.N;
  coeffs["lower_bound"] = -ln.N / ln.L;
  doc["coefficients"] = coeffs;

  doc["residuals"] = residuals_json(prof);
  doc["class_integrals"] = class_integrals_json(class_integrals(prof));
  doc["futaki"] = futaki_json(bando_futaki(prof));

  Json profile;
  profile["gamma"] = prof.gamma;
  profile["v"] = prof.v;
  profile["phi"] = prof.phi;
  profile["lambda"] = prof.lambda;
  doc["profile"] = profile;

  Json knots;
  Json kg = Json::array(), kv = Json::array(), kdv = Json::array();
  for (const Knot& k : traj.knots) {
    kg.push_back(k.gamma);
    kv.push_back(k.v);
    kdv.push_back(k.dv);
  }
  knots["gamma"] = kg;
  knots["v"] = kv;
  knots["dv"] = kdv;
  doc["knots"] = knots;
  return doc;
}

ProfileSolution profile_from_document(const Json& doc) {
  if (!doc.is_object() || !doc.contains("command") || doc.at("command") != "solve") {
    throw Error(ErrorKind::InvalidInput, "not a solve document");
  }
  const Json& surface = require_object(doc, "surface");
  const Json& solver = require_object(doc, "solver");
  const Json& coeffs = require_object(doc, "coefficients");
  const Json& profile = require_object(doc, "profile");
  const Json& knots = require_object(doc, "knots");

  SurfaceSpec spec;
  spec.genus = static_cast<int>(require_number(surface, "genus"));
  spec.degree = static_cast<int>(require_number(surface, "degree"));
  spec.a = require_number(surface, "a");
  spec.b = require_number(surface, "b");
  spec.validate();

  BvpSolution bvp;
  bvp.spec = spec;
  bvp.c_star = require_number(coeffs, "Cstar");
  bvp.coeffs = coeffs_from_C(spec, bvp.c_star);
  bvp.tol = require_number(solver, "tol");
  bvp.ivp_tol = require_number(solver, "ivp_tol");
  bvp.iterations = static_cast<int>(require_number(solver, "iterations"));
  bvp.bracket_lo = require_number(solver, "bracket_lo");
  bvp.bracket_hi = require_number(solver, "bracket_hi");

  IvpTrajectory& traj = bvp.trajectory;
  traj.coeffs = bvp.coeffs;
  traj.status = IvpStatus::Complete;
  traj.gamma_star = spec.gamma_end();
  traj.tol = bvp.ivp_tol;
  traj.breakdown_floor = require_number(solver, "breakdown_floor");
  traj.accepted_steps = static_cast<int>(require_number(solver, "accepted_steps"));
  traj.rejected_steps = static_cast<int>(require_number(solver, "rejected_steps"));
  traj.gamma_grid = require_array(profile, "gamma");
  traj.v_values = require_array(profile, "v");
  const std::vector<double> kg = require_array(knots, "gamma");
  const std::vector<double> kv = require_array(knots, "v");
  const std::vector<double> kdv = require_array(knots, "dv");
  if (traj.gamma_grid.size() < 16 || traj.gamma_grid.size() != traj.v_values.size() ||
      kg.size() < 2 || kg.size() != kv.size() || kg.size() != kdv.size()) {
    throw Error(ErrorKind::InvalidInput, "inconsistent array lengths in solve document");
  }
  for (std::size_t i = 0; i < kg.size(); ++i) traj.knots.push_back({kg[i], kv[i], kdv[i]});
  bvp.residuals = shoot_residuals(traj);
  return recover_phi(bvp);
}

std::string profile_csv(const ProfileSolution& prof) {
  std::ostringstream out;
  out << "gamma,v,phi,lambda\n";
  for (std::size_t i = 0; i < prof.gamma.size(); ++i) {
    out << format_real(prof.gamma[i]) << ',' << format_real(prof.v[i]) << ','
        << format_real(prof.phi[i]) << ',' << format_real(prof.lambda[i]) << '\n';
  }
  return out.str();
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "C,status,gammaStar_or_vEnd\n";
  for (const ScanRow& r : rows) {
    out << format_real(r.C) << ',' << (r.error.empty() ? to_string(r.status) : "Error") << ','
        << format_real(r.value) << '\n';
  }
  return out.str();
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream out;
  out << "m,Cstar,M\n";
  for (const PhaseRow& r : rows) {
    out << format_real(r.m) << ',' << format_real(r.c_star) << ',' << format_real(r.M) << '\n';
  }
  return out.str();
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out << prefix << ',' << format_real(j.get<double>()) << '\n';
  } else if (j.is_string()) {
    out << prefix << ',' << j.get<std::string>() << '\n';
  } else {
    out << prefix << ',' << j.dump() << '\n';
  }
}

}  // namespace

std::string flat_csv(const Json& doc) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(doc, "", out);
  return out.str();
}

}  // namespace hek
