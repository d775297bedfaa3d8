#include "darksts/error.hpp"

namespace darksts {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::DegeneratePolygon: return "DegeneratePolygon";
        case Errc::ChecksumMismatch: return "ChecksumMismatch";
        case Errc::UnsupportedMessageType: return "UnsupportedMessageType";
        case Errc::TruncatedPayload: return "TruncatedPayload";
        case Errc::MalformedSentence: return "MalformedSentence";
        case Errc::MissingColumn: return "MissingColumn";
        case Errc::EmptyFile: return "EmptyFile";
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::OutOfScene: return "OutOfScene";
        case Errc::MissingScene: return "MissingScene";
        case Errc::NotAnStsDetection: return "NotAnStsDetection";
        case Errc::DegenerateInput: return "DegenerateInput";
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

}  // namespace darksts
