#ifndef QIFKIT_ERRORS_H_
#define QIFKIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qifkit {

// Malformed or out-of-range input: bad distributions, dimension mismatches,
// parameters outside their documented range.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

// A value was requested outside the domain where it is defined, e.g. a gain
// outside an f-mean generator's domain or a negative vulnerability.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace qifkit

#endif  // QIFKIT_ERRORS_H_
