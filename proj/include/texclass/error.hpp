#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace texclass {

enum class ErrorCode {
    UnsupportedFormat,
    CorruptFile,
    ZeroDimension,
    BadLevelCount,
    NoValidPairs,
    ImageTooSmall,
    EmptyTrainingSet,
    MixedLengths,
    DimensionMismatch,
    IoFailure,
    SchemaMismatch,
    InvalidArgument,
    InsufficientData,
    VersionMismatch,
    ClassTooSmall,
    UnknownLabel,
    LengthMismatch,
    EmptyMatrix,
    EmptyDataset,
    NoClasses,
    BadSpec,
};

std::string_view to_string(ErrorCode code);

/// Every library failure surfaces as this exception; `code()` identifies the
/// contract that was violated.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace texclass
