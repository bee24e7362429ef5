#pragma once

#include <stdexcept>
#include <string>

namespace hdx {

enum class ErrorCode {
    EmptyInput,
    MixedDimension,
    DuplicateVertex,
    SimplexNotInComplex,
    DegreeOutOfRange,
    DegreeMismatch,
    DegreeTooHigh,
    NonPositiveWeight,
    MissingFacetWeight,
    NotGalleryConnected,
    NotPartite,
    UnknownVertex,
    InvalidPartition,
    InvalidSide,
    NotSelfAdjoint,
    NoConvergence,
    PoleHit,
    TrivialComplex,
    ParseFailure,
    ValidationFailure,
    UsageFailure,
    IoFailure,
};

/** Library-wide exception carrying a machine-checkable failure code. */
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace hdx
