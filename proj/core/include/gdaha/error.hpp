#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gdaha {

enum class ErrorKind {
  // validation
  FiniteDynkin,
  ShapeMismatch,
  NotAffine,
  ZeroParameter,
  SizeMismatch,
  BadOrdering,
  DeltaTooLarge,
  NonZeroHbar,
  TraceObstruction,
  DetObstruction,
  NotD4,
  SumNotZero,
  NonGenericParameters,
  ParseError,
  // numerical
  NoConvergence,
  ContinuationStall,
  PathTooCoarse,
  StepUnderflow,
  ToleranceNotMet,
  RankAmbiguous,
  // certification
  SpecMismatch,
  EmptySubspace,
  NotInvariant,
  WrongIsotypicDimension,
  RelationResidualTooLarge,
};

std::string_view to_string(ErrorKind kind);

/// Broad category used by the CLI to pick an exit code.
enum class ErrorClass { Validation, Convergence, Certification };

ErrorClass classify(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by iterative solvers; carries the best value reached.
class ConvergenceError : public Error {
 public:
  ConvergenceError(ErrorKind kind, const std::string& what, double best)
      : Error(kind, what), best_(best) {}

  double best() const noexcept { return best_; }

 private:
  double best_;
};

}  // namespace gdaha
