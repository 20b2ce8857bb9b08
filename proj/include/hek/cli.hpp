#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hek/document.hpp"

namespace hek {

enum class Command { Solve, Scan, Mstar, Phase, Verify, Futaki, Cone };
enum class Format { Json, Csv };

const char* to_string(Command c) noexcept;
Command parse_command(const std::string& name);
Format parse_format(const std::string& name);

struct RunConfig {
  Command command = Command::Solve;
  int genus = 2;
  int degree = -1;
  double m = 1.0;
  double tol = kDefaultShootTol;
  int grid = kDefaultGrid;
  Format format = Format::Json;
  std::string output;  ///< empty: write to the output stream
  // scan
  double c_min = -10.0;
  double c_max = 10.0;
  int steps = 41;
  // phase
  std::vector<double> ms{0.25, 0.5, 1.0, 2.0, 5.0, 10.0};
  // cone; non-positive a also means 2π when used as the futaki class coefficient
  double a = 2.0 * std::numbers::pi;
  double b = 2.0 * std::numbers::pi;
  // verify
  std::string input;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Agreement required between stored and recomputed quantities in verify.
inline constexpr double kVerifyTol = 1e-12;

struct Output {
  Json doc;
  std::string csv;
  bool passed = true;  ///< false only for a failed verify
};

/// Computes the result of one command in both formats. Throws hek::Error.
Output execute(const RunConfig& cfg);

/// Verification report for a parsed solve document.
Json verify_document(const Json& doc);

/// Runs one command, writing the result to cfg.output (or out) and
/// diagnostics to err. Returns 0 on success, 1 on invalid input or IO
/// failure, 2 on numerical failure or a failed verification.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hek
