#include "gsbench/errors.hpp"

namespace gsbench {

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::DegenerateGeometry: return "degenerate geometry";
    case ErrorKind::UnsupportedBasis: return "unsupported basis";
    case ErrorKind::LinearDependence: return "basis linear dependence";
    case ErrorKind::Resource: return "resource limit";
    case ErrorKind::Computation: return "computation error";
    case ErrorKind::Io: return "I/O error";
  }
  return "error";
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Usage:
      return 1;
    case ErrorKind::Io:
      return 3;
    case ErrorKind::Parse:
      // Malformed input files come in through I/O paths.
      return 3;
    default:
      return 2;
  }
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace gsbench
