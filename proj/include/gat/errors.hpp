#pragma once

#include <stdexcept>
#include <string>

namespace gat {

enum class ErrorKind {
  InvalidConfig,
  UnphysicalDecay,
  OutOfBand,
  CausalityViolation,
  ResolutionError,
  FilterSingular,
  NonConvergentTransform,
  UnsupportedDispersion,
  DiscretizationError,
  WindowTooShort,
  OptimizationFailed,
  IncompleteEmission
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// Non-fatal diagnostics go through here so tests can silence them.
void warn(const std::string& what);
void set_warnings_enabled(bool on);

}  // namespace gat
