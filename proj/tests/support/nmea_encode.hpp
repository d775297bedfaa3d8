// Test-only AIS encoder, written straight from the message bit layouts.
// Decoding is checked against it, so it shares no code with the decoder.
#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "darksts/nmea.hpp"

namespace testsupport {

class BitWriter {
public:
    void put(std::uint64_t value, int width) {
        for (int i = width - 1; i >= 0; --i) {
            bits_.push_back(static_cast<std::uint8_t>((value >> i) & 1U));
        }
    }
    void put_signed(std::int64_t value, int width) {
        put(static_cast<std::uint64_t>(value) & ((std::uint64_t{1} << width) - 1), width);
    }
    void put_text(const std::string& s, int chars) {
        for (int i = 0; i < chars; ++i) {
            const char c = i < static_cast<int>(s.size()) ? s[static_cast<std::size_t>(i)] : '@';
            const int code = c >= 64 ? c - 64 : c;
            put(static_cast<std::uint64_t>(code & 0x3F), 6);
        }
    }
    std::size_t size() const { return bits_.size(); }

    // 6-bit armoring; returns the payload and sets the fill-bit count.
    std::string armor(int& fill) const {
        std::vector<std::uint8_t> b = bits_;
        fill = static_cast<int>((6 - b.size() % 6) % 6);
        b.insert(b.end(), static_cast<std::size_t>(fill), 0);
        std::string out;
        for (std::size_t i = 0; i < b.size(); i += 6) {
            int v = 0;
            for (std::size_t k = 0; k < 6; ++k) v = (v << 1) | b[i + k];
            out.push_back(static_cast<char>(v < 40 ? v + 48 : v + 56));
        }
        return out;
    }

private:
    std::vector<std::uint8_t> bits_;
};

inline std::string encode_position(const darksts::nmea::PositionReport& r, int& fill) {
    BitWriter w;
    w.put(r.msg_type, 6);
    w.put(r.repeat, 2);
    w.put(r.mmsi, 30);
    w.put(r.nav_status, 4);
    w.put_signed(r.rot, 8);
    w.put(r.sog, 10);
    w.put(r.position_accuracy ? 1 : 0, 1);
    w.put_signed(r.lon, 28);
    w.put_signed(r.lat, 27);
    w.put(r.cog, 12);
    w.put(r.heading, 9);
    w.put(r.utc_second, 6);
    w.put(r.maneuver, 2);
    w.put(r.spare, 3);
    w.put(r.raim ? 1 : 0, 1);
    w.put(r.radio, 19);
    return w.armor(fill);
}

inline std::string encode_static(const darksts::nmea::StaticVoyage& s, int& fill) {
    BitWriter w;
    w.put(5, 6);
    w.put(s.repeat, 2);
    w.put(s.mmsi, 30);
    w.put(s.ais_version, 2);
    w.put(s.imo, 30);
    w.put_text(s.callsign, 7);
    w.put_text(s.name, 20);
    w.put(s.ship_type, 8);
    w.put(s.to_bow, 9);
    w.put(s.to_stern, 9);
    w.put(s.to_port, 6);
    w.put(s.to_starboard, 6);
    w.put(s.epfd, 4);
    w.put(s.eta_month, 4);
    w.put(s.eta_day, 5);
    w.put(s.eta_hour, 5);
    w.put(s.eta_minute, 6);
    w.put(s.draught, 8);
    w.put_text(s.destination, 20);
    w.put(s.dte ? 1 : 0, 1);
    w.put(s.spare ? 1 : 0, 1);
    return w.armor(fill);
}

inline std::string wrap(const std::string& body) {
    std::uint8_t x = 0;
    for (const char c : body) x ^= static_cast<std::uint8_t>(c);
    char tail[8];
    std::snprintf(tail, sizeof tail, "*%02X", x);
    return "!" + body + tail;
}

/// Splits a payload into sentences of at most `chunk` characters.
inline std::vector<std::string> sentences(const std::string& payload, int fill, std::size_t chunk = 60,
                                          const std::string& seq = "1", const std::string& channel = "A") {
    std::vector<std::string> out;
    const std::size_t parts = (payload.size() + chunk - 1) / chunk;
    for (std::size_t i = 0; i < parts; ++i) {
        const bool last = i + 1 == parts;
        const std::string body = "AIVDM," + std::to_string(parts) + "," + std::to_string(i + 1) + "," +
                                 (parts > 1 ? seq : "") + "," + channel + "," + payload.substr(i * chunk, chunk) +
                                 "," + std::to_string(last ? fill : 0);
        out.push_back(wrap(body));
    }
    return out;
}

}  // namespace testsupport
