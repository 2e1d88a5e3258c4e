#include "monospec/errors.hpp"

namespace monospec {

const char* Error::kind_name() const noexcept {
  switch (kind_) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::validation: return "validation";
    case ErrorKind::invalid_matrix: return "invalid_matrix";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::pole: return "pole";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::no_root: return "no_root";
    case ErrorKind::path_too_close: return "path_too_close";
    case ErrorKind::non_convergence: return "non_convergence";
    case ErrorKind::branch_choice: return "branch_choice";
    case ErrorKind::corrector_divergence: return "corrector_divergence";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

int Error::exit_code() const noexcept {
  switch (kind_) {
    case ErrorKind::non_convergence:
    case ErrorKind::branch_choice:
    case ErrorKind::corrector_divergence:
      return 3;
    default:
      return 2;
  }
}

}  // namespace monospec
