#ifndef PQELL_ERRORS_HPP
#define PQELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pqell {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Result would be infinite (e.g. tan_pq at the end of the half-period).
class RangeError : public std::range_error {
 public:
  explicit RangeError(const std::string& what) : std::range_error(what) {}
};

// A series or quadrature did not meet its stopping rule within its budget.
class NonConvergence : public std::runtime_error {
 public:
  explicit NonConvergence(const std::string& what)
      : std::runtime_error(what) {}
};

// Target value not enclosed by the bracket handed to a root finder.
class BracketError : public std::domain_error {
 public:
  explicit BracketError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace pqell

#endif  // PQELL_ERRORS_HPP
