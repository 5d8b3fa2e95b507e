#pragma once

#include <stdexcept>
#include <string>

namespace opsplit {

enum class ErrorKind {
  dimension_mismatch,
  invalid_input,
  not_positive_semidefinite,
  singular_gram,
  norm_violation,
  solver_failure,
  unsupported_value,
};

// Single exception type for the library; `kind()` tells callers (notably the
// CLI exit-code mapping) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // True for failures caused by the numbers rather than by malformed input.
  bool is_numerical() const noexcept {
    return kind_ == ErrorKind::singular_gram || kind_ == ErrorKind::solver_failure ||
           kind_ == ErrorKind::not_positive_semidefinite;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace opsplit
