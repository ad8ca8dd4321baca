#include "texclass/error.hpp"

namespace texclass {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::CorruptFile: return "CorruptFile";
        case ErrorCode::ZeroDimension: return "ZeroDimension";
        case ErrorCode::BadLevelCount: return "BadLevelCount";
        case ErrorCode::NoValidPairs: return "NoValidPairs";
        case ErrorCode::ImageTooSmall: return "ImageTooSmall";
        case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
        case ErrorCode::MixedLengths: return "MixedLengths";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IoFailure: return "IoFailure";
        case ErrorCode::SchemaMismatch: return "SchemaMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::ClassTooSmall: return "ClassTooSmall";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::EmptyDataset: return "EmptyDataset";
        case ErrorCode::NoClasses: return "NoClasses";
        case ErrorCode::BadSpec: return "BadSpec";
    }
    return "Unknown";
}

}  // namespace texclass
