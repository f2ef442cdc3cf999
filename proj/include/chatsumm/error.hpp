#pragma once

#include <stdexcept>
#include <string>

namespace chatsumm {

enum class ErrorCode {
    MalformedRecord,
    EmptyInput,
    UnknownSpeaker,
    EmptyCorpus,
    InvalidHyperparam,
    EmptyDocument,
    PredictorFailure,
    SegmentSizeInvalid,
    Timeout,
    ProtocolError,
    DimensionMismatch,
    FileUnreadable,
    NoValidRows,
    RemoteEncoderFailure,
    LengthMismatch,
    RewardOutOfRange,
    Uninitialized,
    ArmFailure,
    ConfigError,
    IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace chatsumm
