#ifndef PIO_ERRORS_HPP
#define PIO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pio {

// Malformed concrete syntax; carries a 1-based source position.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line(line),
        column(column),
        message(message) {}
  int line;
  int column;
  std::string message;
};

class TypeError : public std::runtime_error {
 public:
  explicit TypeError(const std::string& m) : std::runtime_error(m) {}
};

class UnificationFailure : public TypeError {
 public:
  UnificationFailure(const std::string& lhs, const std::string& rhs)
      : TypeError("cannot unify " + lhs + " with " + rhs), lhs(lhs), rhs(rhs) {}
  std::string lhs, rhs;
};

class OccursCheck : public TypeError {
 public:
  OccursCheck(const std::string& metavar, const std::string& type)
      : TypeError("occurs check: " + metavar + " in " + type) {}
};

class AmbiguousType : public TypeError {
 public:
  explicit AmbiguousType(const std::string& where)
      : TypeError("ambiguous type: unresolved metavariable in " + where) {}
};

class IllFormedType : public TypeError {
 public:
  explicit IllFormedType(const std::string& m) : TypeError(m) {}
};

// Value shape does not match the combinator's domain; indicates a bug in
// the checker, not a semantic outcome.
class InternalTypeError : public std::logic_error {
 public:
  explicit InternalTypeError(const std::string& m) : std::logic_error(m) {}
};

class ShapeMismatch : public std::runtime_error {
 public:
  explicit ShapeMismatch(const std::string& m) : std::runtime_error(m) {}
};

class NotPolynomial : public std::runtime_error {
 public:
  explicit NotPolynomial(const std::string& m) : std::runtime_error(m) {}
};

class HasMu : public std::runtime_error {
 public:
  explicit HasMu(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace pio

#endif
