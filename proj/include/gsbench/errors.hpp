#pragma once

#include <stdexcept>
#include <string>

namespace gsbench {

enum class ErrorKind {
  Usage,
  Parse,
  Domain,
  DegenerateGeometry,
  UnsupportedBasis,
  LinearDependence,
  Resource,
  Computation,
  Io,
};

/// Base exception for every failure raised by the library. The kind selects
/// the CLI exit code (see exit_code()).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

/// 1 usage, 2 computation, 3 I/O.
int exit_code(ErrorKind kind) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace gsbench
