#pragma once

#include <stdexcept>
#include <string>

namespace modgraph {

// Precondition broken by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed graph, tree or class text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Evaluation point at or beyond the radius of convergence.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series tail could not be bounded at the requested tolerance.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Root finding or other numerics failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested a random object from an empty family.
class NoObjectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The class does not satisfy the analytic condition needed for constants.
class ConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modgraph
