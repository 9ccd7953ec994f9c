#pragma once

#include <stdexcept>

namespace psi {

/// A schedule or algorithm cannot operate within the given sampling budget.
class insufficient_budget_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The instance has a zero gap (means tied on the Pareto boundary), so the
/// complexity terms are undefined.
class degenerate_instance_error : public std::domain_error {
  using std::domain_error::domain_error;
};

/// Malformed instance file; the message carries the offending line number.
class parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace psi
