#pragma once

#include <stdexcept>
#include <string>

namespace mecsched {

// Base of every exception thrown by the library. `kind()` is a short stable
// token used by the CLI for its one-line error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Precondition of a solver violated (empty subset, d <= 0 where d > 0 is
// required, heterogeneous rates passed to a special-case solver, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class LookupError : public Error {
 public:
  explicit LookupError(const std::string& what) : Error("lookup", what) {}
};

// Malformed input document. The message carries the field path or position.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

// Well-formed input whose values break a type invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config", what) {}
};

// LP built with inconsistent dimensions.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error("structure", what) {}
};

// Exhaustive search refused because the instance exceeds its budget.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error("budget", what) {}
};

}  // namespace mecsched
