#include "hek/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "hek/error.hpp"

namespace hek {

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Scan: return "scan";
    case Command::Mstar: return "mstar";
    case Command::Phase: return "phase";
    case Command::Verify: return "verify";
    case Command::Futaki: return "futaki";
    case Command::Cone: return "cone";
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Solve, Command::Scan, Command::Mstar, Command::Phase,
                    Command::Verify, Command::Futaki, Command::Cone}) {
    if (name == to_string(c)) return c;
  }
  throw Error(ErrorKind::InvalidInput, "unknown command '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw Error(ErrorKind::InvalidInput, "unknown format '" + name + "'");
}

namespace {

SurfaceSpec spec_of(const RunConfig& cfg) {
  if (!(cfg.m > 0.0) || !std::isfinite(cfg.m)) {
    std::ostringstream msg;
    msg << "m must be positive and finite, got " << cfg.m;
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
  SurfaceSpec spec = SurfaceSpec::from_m(cfg.genus, cfg.degree, cfg.m);
  spec.validate();
  return spec;
}

void check_grid(int grid) {
  if (grid < 16) throw Error(ErrorKind::InvalidInput, "grid must be >= 16, got " + std::to_string(grid));
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = to_string(cfg.command);
  j["genus"] = cfg.genus;
  j["degree"] = cfg.degree;
  j["m"] = cfg.m;
  j["tol"] = cfg.tol;
  j["grid"] = cfg.grid;
  return j;
}

Output do_solve(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const ProfileSolution prof = recover_phi(solve_bvp(spec_of(cfg), cfg.tol, cfg.grid));
  Output o;
  o.doc = solve_document(prof);
  o.csv = profile_csv(prof);
  return o;
}

Output do_scan(const RunConfig& cfg) {
  if (!(cfg.c_min < cfg.c_max)) throw Error(ErrorKind::InvalidInput, "scan requires cmin < cmax");
  if (cfg.steps < 2) throw Error(ErrorKind::InvalidInput, "scan requires steps >= 2");
  const SurfaceSpec spec = spec_of(cfg);
  const auto rows = scan_C(spec, cfg.c_min, cfg.c_max, cfg.steps);
  Output o;
  o.doc["command"] = "scan";
  o.doc["surface"] = surface_json(spec);
  o.doc["cmin"] = cfg.c_min;
  o.doc["cmax"] = cfg.c_max;
  o.doc["steps"] = cfg.steps;
  Json arr = Json::array();
  for (const ScanRow& r : rows) {
    Json row;
    row["C"] = r.C;
    row["status"] = r.error.empty() ? to_string(r.status) : "Error";
    row["gammaStar_or_vEnd"] = r.value;
    if (!r.error.empty()) row["error"] = r.error;
    arr.push_back(row);
  }
  o.doc["rows"] = arr;
  o.csv = scan_csv(rows);
  return o;
}

Output do_mstar(const RunConfig& cfg) {
  const SurfaceSpec spec = spec_of(cfg);
  const double M = find_M(spec, cfg.tol);
  Output o;
  o.doc["command"] = "mstar";
  o.doc["surface"] = surface_json(spec);
  o.doc["tol"] = cfg.tol;
  o.doc["M"] = M;
  o.csv = flat_csv(o.doc);
  return o;
}

Output do_phase(const RunConfig& cfg) {
  if (cfg.ms.empty()) throw Error(ErrorKind::InvalidInput, "phase requires at least one m");
  std::vector<SurfaceSpec> specs;
  for (double m : cfg.ms) {
    RunConfig one = cfg;
    one.m = m;
    specs.push_back(spec_of(one));
  }
  const auto rows = phase_curve(specs, cfg.tol);
  Output o;
  o.doc["command"] = "phase";
  o.doc["genus"] = cfg.genus;
  o.doc["degree"] = cfg.degree;
  o.doc["tol"] = cfg.tol;
  Json arr = Json::array();
  for (const PhaseRow& r : rows) {
    Json row;
    row["m"] = r.m;
    row["Cstar"] = r.c_star;
    row["M"] = r.M;
    if (!r.error.empty()) row["error"] = r.error;
    arr.push_back(row);
  }
  o.doc["rows"] = arr;
  o.csv = phase_csv(rows);
  return o;
}

Output do_futaki(const RunConfig& cfg) {
  check_grid(cfg.grid);
  const SurfaceSpec spec = spec_of(cfg);
  const BvpSolution bvp = solve_bvp(spec, cfg.tol, cfg.grid);
  const double a = cfg.a > 0.0 ? cfg.a : 2.0 * std::numbers::pi;
  Output o;
  o.doc["command"] = "futaki";
  o.doc["surface"] = surface_json(spec);
  o.doc["Cstar"] = bvp.c_star;
  o.doc["A"] = bvp.coeffs.A;
  o.doc["B"] = bvp.coeffs.B;
  o.doc["class_a"] = a;
  o.doc["futaki"] = futaki_json(bando_futaki(bvp.coeffs, a));
  o.csv = flat_csv(o.doc);
  return o;
}

Output do_cone(const RunConfig& cfg) {
  Output o;
  o.doc = Json{{"command", "cone"}};
  o.doc.update(cone_json(cone_check(cfg.genus, cfg.degree, cfg.a, cfg.b)));
  o.csv = flat_csv(o.doc);
  return o;
}

Json read_json_file(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::InvalidInput, "verify requires --input");
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

// Largest scaled discrepancy over the numeric leaves of `stored`.
double compare_numbers(const Json& stored, const Json& fresh, const std::string& prefix,
                       Json& mismatches) {
  double worst = 0.0;
  for (auto it = stored.begin(); it != stored.end(); ++it) {
    const std::string key = prefix + "." + it.key();
    if (!it.value().is_number()) continue;
    if (!fresh.contains(it.key()) || !fresh.at(it.key()).is_number()) {
      mismatches.push_back(key);
      worst = std::numeric_limits<double>::infinity();
      continue;
    }
    const double a = it.value().get<double>();
    const double b = fresh.at(it.key()).get<double>();
    const double diff = std::abs(a - b) / std::max(1.0, std::abs(a));
    if (!(diff <= kVerifyTol)) mismatches.push_back(key);
    worst = std::max(worst, diff);
  }
  return worst;
}

}  // namespace

Json verify_document(const Json& doc) {
  const ProfileSolution prof = profile_from_document(doc);
  const Json fresh_res = residuals_json(prof);
  const Json fresh_ci = class_integrals_json(class_integrals(prof));
  const Json fresh_fu = futaki_json(bando_futaki(prof));

  Json mismatches = Json::array();
  double worst = 0.0;
  for (const char* section : {"residuals", "class_integrals", "futaki"}) {
    if (!doc.contains(section) || !doc.at(section).is_object()) {
      throw Error(ErrorKind::InvalidInput, std::string("solve document lacks object '") + section + "'");
    }
  }
  worst = std::max(worst, compare_numbers(doc.at("residuals"), fresh_res, "residuals", mismatches));
  worst = std::max(worst, compare_numbers(doc.at("class_integrals"), fresh_ci, "class_integrals", mismatches));
  worst = std::max(worst, compare_numbers(doc.at("futaki"), fresh_fu, "futaki", mismatches));
  if (doc.at("futaki").value("verdict", "") != fresh_fu.at("verdict")) mismatches.push_back("futaki.verdict");

  const SurfaceSpec& spec = prof.spec();
  const double tol = prof.bvp.tol;
  Json checks;
  checks["target"] = fresh_res.at("end_rel").get<double>() <= tol;
  checks["interior_positive"] = fresh_res.at("min_interior_phi").get<double>() > 0.0;
  const LinearInC ln = constants_LN(spec);
  checks["above_lower_bound"] = prof.bvp.c_star > -ln.N / ln.L;
  checks["reproduced"] = mismatches.empty();

  bool passed = true;
  for (auto it = checks.begin(); it != checks.end(); ++it) passed = passed && it.value().get<bool>();

  Json report;
  report["command"] = "verify";
  report["surface"] = surface_json(spec);
  report["Cstar"] = prof.bvp.c_star;
  report["max_discrepancy"] = worst;
  report["tolerance"] = kVerifyTol;
  report["mismatches"] = mismatches;
  report["checks"] = checks;
  report["residuals"] = fresh_res;
  report["passed"] = passed;
  return report;
}

namespace {

Output dispatch(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Solve: return do_solve(cfg);
    case Command::Scan: return do_scan(cfg);
    case Command::Mstar: return do_mstar(cfg);
    case Command::Phase: return do_phase(cfg);
    case Command::Futaki: return do_futaki(cfg);
    case Command::Cone: return do_cone(cfg);
    case Command::Verify: {
      Output o;
      o.doc = verify_document(read_json_file(cfg.input));
      o.passed = o.doc.at("passed").get<bool>();
      o.csv = flat_csv(o.doc);
      return o;
    }
  }
  throw Error(ErrorKind::InvalidInput, "unhandled command");
}

}  // namespace

Output execute(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tol must be positive");
  Output o = dispatch(cfg);
  // Config goes right after the command name.
  Json doc;
  doc["command"] = o.doc.at("command");
  doc["config"] = config_json(cfg);
  for (auto it = o.doc.begin(); it != o.doc.end(); ++it) {
    if (it.key() != "command") doc[it.key()] = it.value();
  }
  o.doc = std::move(doc);
  if (cfg.command != Command::Solve && cfg.command != Command::Scan && cfg.command != Command::Phase) {
    o.csv = flat_csv(o.doc);
  }
  return o;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Output o = execute(cfg);
    const std::string text = cfg.format == Format::Csv ? o.csv : dump_json(o.doc);
    if (cfg.output.empty()) {
      out << text;
      out.flush();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error(ErrorKind::Io, "cannot open '" + cfg.output + "' for writing");
      file << text;
      if (!file.flush()) throw Error(ErrorKind::Io, "write to '" + cfg.output + "' failed");
    }
    if (!o.passed) {
      err << "error: verification failed\n";
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::InvalidInput:
      case ErrorKind::Domain:
      case ErrorKind::Io:
        return kExitInvalid;
      default:
        return kExitNumerical;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace hek
