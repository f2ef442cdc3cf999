#include "chatsumm/error.hpp"

namespace chatsumm {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedRecord: return "MalformedRecord";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::UnknownSpeaker: return "UnknownSpeaker";
        case ErrorCode::EmptyCorpus: return "EmptyCorpus";
        case ErrorCode::InvalidHyperparam: return "InvalidHyperparam";
        case ErrorCode::EmptyDocument: return "EmptyDocument";
        case ErrorCode::PredictorFailure: return "PredictorFailure";
        case ErrorCode::SegmentSizeInvalid: return "SegmentSizeInvalid";
        case ErrorCode::Timeout: return "Timeout";
        case ErrorCode::ProtocolError: return "ProtocolError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::FileUnreadable: return "FileUnreadable";
        case ErrorCode::NoValidRows: return "NoValidRows";
        case ErrorCode::RemoteEncoderFailure: return "RemoteEncoderFailure";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::RewardOutOfRange: return "RewardOutOfRange";
        case ErrorCode::Uninitialized: return "Uninitialized";
        case ErrorCode::ArmFailure: return "ArmFailure";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

}  // namespace chatsumm
