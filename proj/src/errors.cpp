#include "gat/errors.hpp"

#include <atomic>
#include <iostream>

namespace gat {

namespace {
std::atomic<bool> g_warnings{true};
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::UnphysicalDecay: return "UnphysicalDecay";
    case ErrorKind::OutOfBand: return "OutOfBand";
    case ErrorKind::CausalityViolation: return "CausalityViolation";
    case ErrorKind::ResolutionError: return "ResolutionError";
    case ErrorKind::FilterSingular: return "FilterSingular";
    case ErrorKind::NonConvergentTransform: return "NonConvergentTransform";
    case ErrorKind::UnsupportedDispersion: return "UnsupportedDispersion";
    case ErrorKind::DiscretizationError: return "DiscretizationError";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::OptimizationFailed: return "OptimizationFailed";
    case ErrorKind::IncompleteEmission: return "IncompleteEmission";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

void warn(const std::string& what) {
  if (g_warnings.load()) std::cerr << "warning: " << what << '\n';
}

void set_warnings_enabled(bool on) { g_warnings.store(on); }

}  // namespace gat
