#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace celldga {

enum class ErrorCode {
    UnknownGenerator,
    UngradedGenerator,
    DimensionMismatch,
    TermLimitExceeded,
    Parse,
    MalformedSquare,
    InvalidDecomposition,
    InconsistentGluing,
    UngradedRegion,
    MissingBoundaryData,
    NotSubdivided,
    BadPair,
    BadPairAt,
    DegreeMismatch,
    SelfReference,
    MissingDecoration,
    TooManyUnknowns,
    InvalidAugmentation,
    InvalidModulus,
};

std::string_view error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what, int index = -1)
        : std::runtime_error(what), code_(code), index_(index) {}
    ErrorCode code() const noexcept { return code_; }
    // Pipeline position for BadPairAt, -1 otherwise.
    int index() const noexcept { return index_; }

private:
    ErrorCode code_;
    int index_;
};

}  // namespace celldga
