#include "essdim/error.hpp"

namespace essdim {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ClosureTooLarge: return "ClosureTooLarge";
    case ErrorKind::TrivialGroup: return "TrivialGroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OutOfScope: return "OutOfScope";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::BackendLimit: return "BackendLimit";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NonScalar: return "NonScalar";
    case ErrorKind::EmptyRepClass: return "EmptyRepClass";
    case ErrorKind::NotSemiFaithful: return "NotSemiFaithful";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::FactConflict: return "FactConflict";
    case ErrorKind::LambdaNotInjective: return "LambdaNotInjective";
    case ErrorKind::NotMultihomogeneous: return "NotMultihomogeneous";
    case ErrorKind::InvalidRefinement: return "InvalidRefinement";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace essdim
