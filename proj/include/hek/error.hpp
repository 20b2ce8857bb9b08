#pragma once

#include <stdexcept>
#include <string>

namespace hek {

enum class ErrorKind {
  InvalidInput,
  Domain,
  StepCollapse,
  NoBracket,
  NonConvergence,
  NegativeDiscriminant,
  GuardBandTooWide,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Solver-side failures, as opposed to bad input.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::StepCollapse || kind_ == ErrorKind::NoBracket ||
           kind_ == ErrorKind::NonConvergence;
  }

 private:
  ErrorKind kind_;
};

}  // namespace hek
