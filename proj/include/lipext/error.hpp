#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lipext {

enum class ErrorCode {
    InvalidArgument,
    UnknownVertex,
    BoundaryVertex,
    BoundaryMismatch,
    QueryCoincidesWithSample,
    NoCertifiedSubset,
    DegenerateSimplex,
    NotInAffineHull,
    InvalidPath,
    MultipleAttachments,
    ValidationError,
    ParseError,
    MethodUnavailable,
    DimensionMismatch,
    BadParams,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::BoundaryVertex: return "BoundaryVertex";
        case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
        case ErrorCode::QueryCoincidesWithSample: return "QueryCoincidesWithSample";
        case ErrorCode::NoCertifiedSubset: return "NoCertifiedSubset";
        case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
        case ErrorCode::NotInAffineHull: return "NotInAffineHull";
        case ErrorCode::InvalidPath: return "InvalidPath";
        case ErrorCode::MultipleAttachments: return "MultipleAttachments";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MethodUnavailable: return "MethodUnavailable";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::BadParams: return "BadParams";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lipext
