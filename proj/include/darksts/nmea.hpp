// !AIVDM / !AIVDO sentence decoding for ITU-R M.1371 message types 1, 2, 3
// (class A position report) and 5 (static and voyage data).
//
// Decoded messages keep the raw integer field values so that decoding is
// lossless; accessor functions convert to physical units and map the
// "not available" sentinels to std::nullopt.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/time.hpp"

namespace darksts::nmea {

inline constexpr std::int32_t kLonNotAvailable = 181 * 600'000;
inline constexpr std::int32_t kLatNotAvailable = 91 * 600'000;
inline constexpr std::uint32_t kSogNotAvailable = 1023;
inline constexpr std::uint32_t kCogNotAvailable = 3600;
inline constexpr std::uint32_t kHeadingNotAvailable = 511;

inline constexpr std::size_t kPositionReportBits = 168;
inline constexpr std::size_t kStaticVoyageBits = 424;

/// Message types 1, 2 and 3.
struct PositionReport {
    std::uint8_t msg_type = 1;
    std::uint8_t repeat = 0;
    std::uint32_t mmsi = 0;
    std::uint8_t nav_status = 15;
    std::int8_t rot = -128;
    std::uint16_t sog = kSogNotAvailable;  // 0.1 kn
    bool position_accuracy = false;
    std::int32_t lon = kLonNotAvailable;  // 1/10000 minute
    std::int32_t lat = kLatNotAvailable;  // 1/10000 minute
    std::uint16_t cog = kCogNotAvailable;  // 0.1 degree
    std::uint16_t heading = kHeadingNotAvailable;
    std::uint8_t utc_second = 60;
    std::uint8_t maneuver = 0;
    std::uint8_t spare = 0;
    bool raim = false;
    std::uint32_t radio = 0;

    friend bool operator==(const PositionReport&, const PositionReport&) = default;
};

std::optional<double> lat_deg(const PositionReport& r) noexcept;
std::optional<double> lon_deg(const PositionReport& r) noexcept;
std::optional<double> sog_knots(const PositionReport& r) noexcept;

/// Message type 5.
struct StaticVoyage {
    std::uint8_t repeat = 0;
    std::uint32_t mmsi = 0;
    std::uint8_t ais_version = 0;
    std::uint32_t imo = 0;
    std::string callsign;
    std::string name;
    std::uint8_t ship_type = 0;
    std::uint16_t to_bow = 0;
    std::uint16_t to_stern = 0;
    std::uint8_t to_port = 0;
    std::uint8_t to_starboard = 0;
    std::uint8_t epfd = 0;
    std::uint8_t eta_month = 0;
    std::uint8_t eta_day = 0;
    std::uint8_t eta_hour = 24;
    std::uint8_t eta_minute = 60;
    std::uint8_t draught = 0;  // 0.1 m
    std::string destination;
    bool dte = true;
    bool spare = false;

    friend bool operator==(const StaticVoyage&, const StaticVoyage&) = default;
};

std::optional<double> draught_m(const StaticVoyage& s) noexcept;

using AisMessage = std::variant<PositionReport, StaticVoyage>;

std::uint32_t mmsi_of(const AisMessage& m) noexcept;

/// One part of a multi-sentence message, awaiting assembly.
struct Fragment {
    int count = 1;
    int number = 1;
    std::string sequence_id;
    std::string channel;
    std::string payload;
    int fill_bits = 0;
};

/// XOR of every byte between the leading '!' and the '*'.
std::uint8_t checksum(std::string_view body) noexcept;

/// Decodes one sentence. Single-part sentences yield an AisMessage; parts of
/// multi-part messages yield a Fragment to feed to FragmentAssembler.
/// Throws Error with ChecksumMismatch, MalformedSentence, TruncatedPayload or
/// UnsupportedMessageType.
std::variant<AisMessage, Fragment> decode_sentence(std::string_view line);

/// Decodes an armored payload. Throws TruncatedPayload,
/// UnsupportedMessageType or MalformedSentence.
AisMessage decode_payload(std::string_view payload, int fill_bits);

/// Reassembles multi-part messages keyed by (part count, sequence id,
/// channel). Parts must arrive in order; an out-of-order part discards the
/// partial message.
class FragmentAssembler {
public:
    /// Returns the message once the final part arrives.
    std::optional<AisMessage> add(const Fragment& f);

    std::size_t pending() const noexcept { return partial_.size(); }
    std::size_t discarded() const noexcept { return discarded_; }

private:
    struct Partial {
        int next = 1;
        std::string payload;
    };
    std::map<std::tuple<int, std::string, std::string>, Partial> partial_;
    std::size_t discarded_ = 0;
};

struct StreamStats {
    std::size_t lines = 0;
    std::size_t messages = 0;
    std::size_t position_reports = 0;
    std::size_t static_reports = 0;
    std::size_t checksum_errors = 0;
    std::size_t unsupported = 0;
    std::size_t truncated = 0;
    std::size_t malformed = 0;
    std::size_t untimed = 0;
    std::size_t rejected_fixes = 0;
};

struct StreamResult {
    std::vector<ais::PositionFix> fixes;
    std::map<std::uint32_t, StaticVoyage> statics;  // latest per MMSI
    StreamStats stats;
};

/// Decodes a log of sentences, one per line. Each line needs a reception
/// time: either an NMEA 4 tag block carrying "c:<unix seconds>" or a leading
/// ISO-8601 token followed by whitespace. Position reports become fixes keyed
/// by the decimal MMSI; the most recent type-5 draught for the vessel is
/// attached to later fixes. Reports without a valid position are rejected.
StreamResult decode_stream(std::string_view text);

/// Registry-style record from a type-5 message (dwt unknown, family Other).
std::optional<ais::VesselRecord> to_vessel_record(const StaticVoyage& s);

}  // namespace darksts::nmea
