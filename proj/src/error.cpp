#include "valgen/error.hpp"

namespace valgen {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::ValueNotRepresented: return "value-not-represented";
    case ErrorKind::FieldMismatch: return "field-mismatch";
    case ErrorKind::UndefinedDegree: return "undefined-degree";
    case ErrorKind::EstimatorUndefined: return "estimator-undefined";
    case ErrorKind::IncompleteSet: return "incomplete-set";
    case ErrorKind::Spec: return "spec";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

}  // namespace valgen
