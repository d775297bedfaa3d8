#include "darksts/nmea.hpp"

#include <charconv>
#include <string>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::nmea {

std::optional<double> lat_deg(const PositionReport& r) noexcept {
    if (r.lat == kLatNotAvailable) return std::nullopt;
    return r.lat / 600'000.0;
}

std::optional<double> lon_deg(const PositionReport& r) noexcept {
    if (r.lon == kLonNotAvailable) return std::nullopt;
    return r.lon / 600'000.0;
}

std::optional<double> sog_knots(const PositionReport& r) noexcept {
    if (r.sog == kSogNotAvailable) return std::nullopt;
    return r.sog / 10.0;
}

std::optional<double> draught_m(const StaticVoyage& s) noexcept {
    if (s.draught == 0) return std::nullopt;
    return s.draught / 10.0;
}

std::uint32_t mmsi_of(const AisMessage& m) noexcept {
    return std::visit([](const auto& msg) { return msg.mmsi; }, m);
}

std::uint8_t checksum(std::string_view body) noexcept {
    std::uint8_t x = 0;
    for (char c : body) {
        x ^= static_cast<std::uint8_t>(c);
    }
    return x;
}

namespace {

class BitReader {
public:
    BitReader(std::string_view payload, int fill_bits) {
        sextets_.reserve(payload.size());
        for (char c : payload) {
            int v = static_cast<unsigned char>(c) - 48;
            if (v < 0 || v > 71 || (v > 39 && v < 48)) {
                throw Error(Errc::MalformedSentence, std::string("invalid payload character '") + c + "'");
            }
            if (v > 40) {
                v -= 8;
            }
            sextets_.push_back(static_cast<std::uint8_t>(v));
        }
        const std::size_t total = sextets_.size() * 6;
        if (fill_bits < 0 || fill_bits > 5 || static_cast<std::size_t>(fill_bits) > total) {
            throw Error(Errc::MalformedSentence, "invalid fill bit count");
        }
        size_ = total - static_cast<std::size_t>(fill_bits);
    }

    std::size_t size() const noexcept { return size_; }

    std::uint32_t u(std::size_t start, std::size_t len) const {
        std::uint32_t v = 0;
        for (std::size_t i = start; i < start + len; ++i) {
            const std::uint8_t sextet = sextets_[i / 6];
            v = (v << 1) | ((sextet >> (5 - i % 6)) & 1u);
        }
        return v;
    }

    std::int32_t s(std::size_t start, std::size_t len) const {
        const std::uint32_t raw = u(start, len);
        if (raw & (1u << (len - 1))) {
            return static_cast<std::int32_t>(raw) - static_cast<std::int32_t>(1u << len);
        }
        return static_cast<std::int32_t>(raw);
    }

    std::string text(std::size_t start, std::size_t chars) const {
        std::string out;
        out.reserve(chars);
        for (std::size_t i = 0; i < chars; ++i) {
            const auto v = u(start + 6 * i, 6);
            out.push_back(static_cast<char>(v < 32 ? v + 64 : v));
        }
        // '@' pads unused characters; trailing spaces are padding too
        while (!out.empty() && (out.back() == '@' || out.back() == ' ')) {
            out.pop_back();
        }
        return out;
    }

private:
    std::vector<std::uint8_t> sextets_;
    std::size_t size_ = 0;
};

PositionReport decode_position(const BitReader& b) {
    if (b.size() < kPositionReportBits) {
        throw Error(Errc::TruncatedPayload, "position report shorter than 168 bits");
    }
    PositionReport r;
    r.msg_type = static_cast<std::uint8_t>(b.u(0, 6));
    r.repeat = static_cast<std::uint8_t>(b.u(6, 2));
    r.mmsi = b.u(8, 30);
    r.nav_status = static_cast<std::uint8_t>(b.u(38, 4));
    r.rot = static_cast<std::int8_t>(b.s(42, 8));
    r.sog = static_cast<std::uint16_t>(b.u(50, 10));
    r.position_accuracy = b.u(60, 1) != 0;
    r.lon = b.s(61, 28);
    r.lat = b.s(89, 27);
    r.cog = static_cast<std::uint16_t>(b.u(116, 12));
    r.heading = static_cast<std::uint16_t>(b.u(128, 9));
    r.utc_second = static_cast<std::uint8_t>(b.u(137, 6));
    r.maneuver = static_cast<std::uint8_t>(b.u(143, 2));
    r.spare = static_cast<std::uint8_t>(b.u(145, 3));
    r.raim = b.u(148, 1) != 0;
    r.radio = b.u(149, 19);
    return r;
}

StaticVoyage decode_static(const BitReader& b) {
    if (b.size() < kStaticVoyageBits) {
        throw Error(Errc::TruncatedPayload, "static report shorter than 424 bits");
    }
    StaticVoyage s;
    s.repeat = static_cast<std::uint8_t>(b.u(6, 2));
    s.mmsi = b.u(8, 30);
    s.ais_version = static_cast<std::uint8_t>(b.u(38, 2));
    s.imo = b.u(40, 30);
    s.callsign = b.text(70, 7);
    s.name = b.text(112, 20);
    s.ship_type = static_cast<std::uint8_t>(b.u(232, 8));
    s.to_bow = static_cast<std::uint16_t>(b.u(240, 9));
    s.to_stern = static_cast<std::uint16_t>(b.u(249, 9));
    s.to_port = static_cast<std::uint8_t>(b.u(258, 6));
    s.to_starboard = static_cast<std::uint8_t>(b.u(264, 6));
    s.epfd = static_cast<std::uint8_t>(b.u(270, 4));
    s.eta_month = static_cast<std::uint8_t>(b.u(274, 4));
    s.eta_day = static_cast<std::uint8_t>(b.u(278, 5));
    s.eta_hour = static_cast<std::uint8_t>(b.u(283, 5));
    s.eta_minute = static_cast<std::uint8_t>(b.u(288, 6));
    s.draught = static_cast<std::uint8_t>(b.u(294, 8));
    s.destination = b.text(302, 20);
    s.dte = b.u(422, 1) != 0;
    s.spare = b.u(423, 1) != 0;
    return s;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Validates "<body>*HH" where body excludes the leading delimiter.
// Returns the body.
std::string_view verified_body(std::string_view sentence) {
    const auto star = sentence.rfind('*');
    if (star == std::string_view::npos) {
        throw Error(Errc::ChecksumMismatch, "missing checksum");
    }
    const auto cs = csv::trim(sentence.substr(star + 1));
    if (cs.size() < 2) {
        throw Error(Errc::ChecksumMismatch, "short checksum");
    }
    const int hi = hex_value(cs[0]);
    const int lo = hex_value(cs[1]);
    const auto body = sentence.substr(1, star - 1);
    if (hi < 0 || lo < 0 || cs.size() != 2 || checksum(body) != (hi << 4 | lo)) {
        throw Error(Errc::ChecksumMismatch, "checksum mismatch");
    }
    return body;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

int small_int(std::string_view s, const char* what) {
    const auto v = csv::parse_int(s);
    if (!v || *v < 0 || *v > 9) {
        throw Error(Errc::MalformedSentence, std::string("bad ") + what);
    }
    return static_cast<int>(*v);
}

}  // namespace

AisMessage decode_payload(std::string_view payload, int fill_bits) {
    const BitReader bits(payload, fill_bits);
    if (bits.size() < 6) {
        throw Error(Errc::TruncatedPayload, "empty payload");
    }
    const auto type = bits.u(0, 6);
    switch (type) {
        case 1:
        case 2:
        case 3:
            return decode_position(bits);
        case 5:
            return decode_static(bits);
        default:
            throw Error(Errc::UnsupportedMessageType, "unsupported message type " + std::to_string(type));
    }
}

std::variant<AisMessage, Fragment> decode_sentence(std::string_view line) {
    line = csv::trim(line);
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.remove_suffix(1);
    }
    if (line.empty() || line.front() != '!') {
        throw Error(Errc::MalformedSentence, "sentence must start with '!'");
    }
    const auto body = verified_body(line);
    const auto fields = split(body, ',');
    if (fields.size() != 7 || (fields[0] != "AIVDM" && fields[0] != "AIVDO")) {
        throw Error(Errc::MalformedSentence, "not an AIVDM/AIVDO sentence");
    }
    Fragment f;
    f.count = small_int(fields[1], "fragment count");
    f.number = small_int(fields[2], "fragment number");
    f.sequence_id = std::string(fields[3]);
    f.channel = std::string(fields[4]);
    f.payload = std::string(fields[5]);
    f.fill_bits = small_int(fields[6], "fill bits");
    if (f.count < 1 || f.number < 1 || f.number > f.count) {
        throw Error(Errc::MalformedSentence, "bad fragment numbering");
    }
    if (f.count == 1) {
        return decode_payload(f.payload, f.fill_bits);
    }
    return f;
}

std::optional<AisMessage> FragmentAssembler::add(const Fragment& f) {
    auto key = std::make_tuple(f.count, f.sequence_id, f.channel);
    if (f.number == 1) {
        if (partial_.erase(key)) {
            ++discarded_;
        }
        partial_[key] = Partial{2, f.payload};
    } else {
        auto it = partial_.find(key);
        if (it == partial_.end() || it->second.next != f.number) {
            if (it != partial_.end()) {
                partial_.erase(it);
            }
            ++discarded_;
            return std::nullopt;
        }
        it->second.payload += f.payload;
        ++it->second.next;
    }
    if (f.number == f.count) {
        auto node = partial_.extract(key);
        return decode_payload(node.mapped().payload, f.fill_bits);
    }
    return std::nullopt;
}

namespace {

// Splits a log line into (reception time, sentence).
std::pair<std::optional<Timestamp>, std::string_view> split_time(std::string_view line) {
    line = csv::trim(line);
    if (!line.empty() && line.front() == '\\') {
        const auto end = line.find('\\', 1);
        if (end == std::string_view::npos) {
            return {std::nullopt, line};
        }
        std::string_view tag = line.substr(1, end - 1);
        const auto sentence = line.substr(end + 1);
        if (const auto star = tag.find('*'); star != std::string_view::npos) {
            tag = tag.substr(0, star);
        }
        for (auto param : split(tag, ',')) {
            if (param.substr(0, 2) == "c:") {
                if (auto v = csv::parse_int(param.substr(2))) {
                    long long secs = *v;
                    if (secs > 100'000'000'000LL) {
                        secs /= 1000;  // milliseconds
                    }
                    return {from_unix(secs), sentence};
                }
            }
        }
        return {std::nullopt, sentence};
    }
    const auto space = line.find_first_of(" \t");
    if (space != std::string_view::npos && line.front() != '!') {
        if (auto t = parse_iso8601(line.substr(0, space))) {
            return {t, csv::trim(line.substr(space + 1))};
        }
    }
    return {std::nullopt, line};
}

}  // namespace

StreamResult decode_stream(std::string_view text) {
    StreamResult out;
    FragmentAssembler assembler;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const auto raw = csv::trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        std::string_view line = raw;
        while (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        ++out.stats.lines;
        const auto [t, sentence] = split_time(line);
        std::optional<AisMessage> msg;
        try {
            auto decoded = decode_sentence(sentence);
            if (auto* m = std::get_if<AisMessage>(&decoded)) {
                msg = std::move(*m);
            } else {
                msg = assembler.add(std::get<Fragment>(decoded));
            }
        } catch (const Error& e) {
            switch (e.code()) {
                case Errc::ChecksumMismatch: ++out.stats.checksum_errors; break;
                case Errc::UnsupportedMessageType: ++out.stats.unsupported; break;
                case Errc::TruncatedPayload: ++out.stats.truncated; break;
                default: ++out.stats.malformed; break;
            }
            continue;
        }
        if (!msg) {
            continue;
        }
        ++out.stats.messages;
        if (const auto* s = std::get_if<StaticVoyage>(&*msg)) {
            ++out.stats.static_reports;
            out.statics[s->mmsi] = *s;
            continue;
        }
        const auto& r = std::get<PositionReport>(*msg);
        ++out.stats.position_reports;
        if (!t) {
            ++out.stats.untimed;
            continue;
        }
        const auto lat = lat_deg(r);
        const auto lon = lon_deg(r);
        const auto sog = sog_knots(r);
        if (!lat || !lon || !sog || *lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon >= 180.0 ||
            *sog > ais::kMaxSogKnots) {
            ++out.stats.rejected_fixes;
            continue;
        }
        ais::PositionFix fix{std::to_string(r.mmsi), *t, geo::GeoPoint(*lat, *lon), *sog, std::nullopt};
        if (auto it = out.statics.find(r.mmsi); it != out.statics.end()) {
            if (auto d = draught_m(it->second); d && *d <= ais::kMaxDraughtM) {
                fix.draught = *d;
            }
        }
        out.fixes.push_back(std::move(fix));
    }
    return out;
}

std::optional<ais::VesselRecord> to_vessel_record(const StaticVoyage& s) {
    ais::VesselRecord v;
    v.vessel_id = std::to_string(s.mmsi);
    if (s.imo != 0 && ais::valid_imo(s.imo)) {
        v.imo = s.imo;
    }
    v.name = s.name;
    v.length = static_cast<double>(s.to_bow) + s.to_stern;
    v.beam = static_cast<double>(s.to_port) + s.to_starboard;
    v.dwt = 0.0;
    v.cargo_family = ais::CargoFamily::Other;
    if (!ais::is_valid_record(v)) {
        return std::nullopt;
    }
    return v;
}

}  // namespace darksts::nmea
