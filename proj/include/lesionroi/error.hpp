#pragma once

#include <stdexcept>
#include <string>

namespace lesionroi {

enum class ErrorCode {
    InvalidArgument,
    OutOfFrame,
    NoForeground,
    NoDetections,
    DimensionMismatch,
    DuplicateId,
    FileNotFound,
    DanglingPath,
    ParseError,
    ValidationError,
    DecodeError,
    WriteError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a reject reason.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::OutOfFrame: return "OutOfFrame";
        case ErrorCode::NoForeground: return "NoForeground";
        case ErrorCode::NoDetections: return "NoDetections";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::DanglingPath: return "DanglingPath";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::DecodeError: return "DecodeError";
        case ErrorCode::WriteError: return "WriteError";
    }
    return "Unknown";
}

}  // namespace lesionroi
