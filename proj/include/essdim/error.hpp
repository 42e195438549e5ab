#pragma once

#include <stdexcept>
#include <string>

namespace essdim {

enum class ErrorKind {
  ClosureTooLarge,
  TrivialGroup,
  NotNormal,
  NotAbelian,
  SearchBudgetExceeded,
  PreconditionViolated,
  ParseError,
  OutOfScope,
  InternalInconsistency,
  BackendLimit,
  NotCentral,
  NonScalar,
  EmptyRepClass,
  NotSemiFaithful,
  HypothesisFailed,
  FactConflict,
  LambdaNotInjective,
  NotMultihomogeneous,
  InvalidRefinement,
  ShapeMismatch,
  NotEquivariant,
  InputError,
};

const char* to_string(ErrorKind k);

// Every failure surfaced by the library. The CLI maps kind() onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind), detail_(detail) {}

  ErrorKind kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// ParseError carries the offending byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& detail)
      : Error(ErrorKind::ParseError,
              detail + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& detail) {
  throw Error(k, detail);
}

}  // namespace essdim
