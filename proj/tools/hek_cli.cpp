#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hek/cli.hpp"
#include "hek/error.hpp"

int main(int argc, char** argv) {
  hek::RunConfig cfg;
  std::string command;
  std::string format = "json";

  CLI::App app{"Higher extremal Kaehler momentum profiles on pseudo-Hirzebruch surfaces"};
  app.add_option("command", command, "solve | scan | mstar | phase | verify | futaki | cone")
      ->required()
      ->check(CLI::IsMember({"solve", "scan", "mstar", "phase", "verify", "futaki", "cone"}));
  app.add_option("--genus,-g", cfg.genus, "genus of the base curve (>= 2)")->capture_default_str();
  app.add_option("--degree,-d", cfg.degree, "degree of the line bundle (!= 0)")->capture_default_str();
  app.add_option("--m", cfg.m, "class parameter m = b/a (> 0)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "relative shooting tolerance")->capture_default_str();
  app.add_option("--grid", cfg.grid, "number of uniform output samples in gamma")->capture_default_str();
  app.add_option("--format", format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output,-o", cfg.output, "output path (default: stdout)");
  app.add_option("--cmin", cfg.c_min, "scan: smallest C")->capture_default_str();
  app.add_option("--cmax", cfg.c_max, "scan: largest C")->capture_default_str();
  app.add_option("--steps", cfg.steps, "scan: number of C values")->capture_default_str();
  app.add_option("--ms", cfg.ms, "phase: list of m values")->delimiter(',');
  app.add_option("--a", cfg.a, "cone/futaki: fibre coefficient a")->capture_default_str();
  app.add_option("--b", cfg.b, "cone: section coefficient b")->capture_default_str();
  app.add_option("--input,-i", cfg.input, "verify: solve document to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hek::kExitInvalid;
  }

  cfg.command = hek::parse_command(command);
  cfg.format = hek::parse_format(format);
  return hek::run(cfg, std::cout, std::cerr);
}
