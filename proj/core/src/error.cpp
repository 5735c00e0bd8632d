#include "gdaha/error.hpp"

namespace gdaha {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FiniteDynkin: return "FiniteDynkin";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAffine: return "NotAffine";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::BadOrdering: return "BadOrdering";
    case ErrorKind::DeltaTooLarge: return "DeltaTooLarge";
    case ErrorKind::NonZeroHbar: return "NonZeroHbar";
    case ErrorKind::TraceObstruction: return "TraceObstruction";
    case ErrorKind::DetObstruction: return "DetObstruction";
    case ErrorKind::NotD4: return "NotD4";
    case ErrorKind::SumNotZero: return "SumNotZero";
    case ErrorKind::NonGenericParameters: return "NonGenericParameters";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ContinuationStall: return "ContinuationStall";
    case ErrorKind::PathTooCoarse: return "PathTooCoarse";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::EmptySubspace: return "EmptySubspace";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::WrongIsotypicDimension: return "WrongIsotypicDimension";
    case ErrorKind::RelationResidualTooLarge: return "RelationResidualTooLarge";
  }
  return "Unknown";
}

ErrorClass classify(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConvergence:
    case ErrorKind::ContinuationStall:
    case ErrorKind::PathTooCoarse:
    case ErrorKind::StepUnderflow:
    case ErrorKind::ToleranceNotMet:
    case ErrorKind::RankAmbiguous:
      return ErrorClass::Convergence;
    case ErrorKind::SpecMismatch:
    case ErrorKind::EmptySubspace:
    case ErrorKind::NotInvariant:
    case ErrorKind::WrongIsotypicDimension:
    case ErrorKind::RelationResidualTooLarge:
      return ErrorClass::Certification;
    default:
      return ErrorClass::Validation;
  }
}

}  // namespace gdaha
