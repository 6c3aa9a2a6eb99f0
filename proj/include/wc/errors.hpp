#pragma once

#include <stdexcept>
#include <string>

namespace wc {

// Malformed or inadmissible input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed its configured budget (CLI exit code 2).
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A proven statement failed to hold on computed data. Always a bug or a
// misconfigured tolerance, never a property of the input (CLI exit code 3).
class InconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace wc
