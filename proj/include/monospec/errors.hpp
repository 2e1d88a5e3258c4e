#pragma once

#include <stdexcept>
#include <string>

namespace monospec {

enum class ErrorKind {
  domain,
  validation,
  invalid_matrix,
  degenerate,
  pole,
  not_found,
  no_root,
  path_too_close,
  non_convergence,
  branch_choice,
  corrector_divergence,
  parse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  const char* kind_name() const noexcept;
  // 3 for numerical non-convergence, 2 for everything else
  int exit_code() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace monospec
