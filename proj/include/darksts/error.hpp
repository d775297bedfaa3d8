#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace darksts {

/// Machine-readable failure categories shared by every pipeline stage.
enum class Errc {
    OutOfRange,
    DegeneratePolygon,
    ChecksumMismatch,
    UnsupportedMessageType,
    TruncatedPayload,
    MalformedSentence,
    MissingColumn,
    EmptyFile,
    MalformedRow,
    OutOfScene,
    MissingScene,
    NotAnStsDetection,
    DegenerateInput,
    ConfigInvalid,
    IoFailure,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace darksts
