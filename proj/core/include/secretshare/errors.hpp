#ifndef SECRETSHARE_ERRORS_HPP
#define SECRETSHARE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace secretshare {

/// Invalid arguments or malformed inputs (CLI exit code 2).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An enumeration guard was exceeded. The message always names the offending
/// cardinality (CLI exit code 3).
class GuardExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Internal numeric solver failed; never silently swallowed.
class SolverFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace secretshare

#endif
