#pragma once

#include <stdexcept>
#include <string>

namespace valgen {

enum class ErrorKind {
    Structural,        // rank mismatch, wrong field kind, malformed object
    Argument,          // bad caller input (non-monic divisor, depth too small, ...)
    Containment,       // subgroup not contained in ambient group
    Unsupported,       // outside what the closed catalogue can compute
    ValueNotRepresented,
    FieldMismatch,
    UndefinedDegree,
    EstimatorUndefined,
    IncompleteSet,
    Spec,              // extension spec failed to parse or validate
    Integrity,         // a certified identity failed to hold at runtime
    NotApplicable,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace valgen
