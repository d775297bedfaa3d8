#include <doctest.h>

#include <string>
#include <variant>

#include "darksts/error.hpp"
#include "darksts/nmea.hpp"
#include "darksts/synth.hpp"
#include "support/nmea_encode.hpp"

using namespace darksts;
using namespace darksts::nmea;
using testsupport::encode_position;
using testsupport::encode_static;
using testsupport::sentences;

namespace {

PositionReport sample_position() {
    PositionReport r;
    r.msg_type = 1;
    r.mmsi = 273'451'000;
    r.nav_status = 1;
    r.rot = -5;
    r.sog = 3;
    r.position_accuracy = true;
    r.lon = static_cast<std::int32_t>(36.5 * 600'000);
    r.lat = static_cast<std::int32_t>(45.25 * 600'000);
    r.cog = 1234;
    r.heading = 123;
    r.utc_second = 42;
    r.radio = 0x12345;
    return r;
}

StaticVoyage sample_static() {
    StaticVoyage s;
    s.mmsi = 273'451'000;
    s.imo = 9'074'729;
    s.callsign = "UBXY7";
    s.name = "VLADIMIR TEST";
    s.ship_type = 80;
    s.to_bow = 200;
    s.to_stern = 50;
    s.to_port = 22;
    s.to_starboard = 22;
    s.epfd = 1;
    s.eta_month = 3;
    s.eta_day = 14;
    s.eta_hour = 7;
    s.eta_minute = 30;
    s.draught = 142;
    s.destination = "KERCH ANCH";
    s.dte = false;
    return s;
}

Errc code_of(const std::string& line) {
    try {
        decode_sentence(line);
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::IoFailure;  // no error at all
}

}  // namespace

TEST_SUITE("nmea") {

TEST_CASE("a hand-assembled type 1 decodes to its fields") {
    const PositionReport r = sample_position();
    int fill = 0;
    const std::string payload = encode_position(r, fill);
    CHECK(payload.size() == 28);
    CHECK(fill == 0);
    const auto lines = sentences(payload, fill);
    REQUIRE(lines.size() == 1);
    const auto out = decode_sentence(lines[0]);
    REQUIRE(std::holds_alternative<AisMessage>(out));
    const auto& msg = std::get<AisMessage>(out);
    REQUIRE(std::holds_alternative<PositionReport>(msg));
    CHECK(std::get<PositionReport>(msg) == r);
    CHECK(*lat_deg(r) == doctest::Approx(45.25));
    CHECK(*lon_deg(r) == doctest::Approx(36.5));
    CHECK(*sog_knots(r) == doctest::Approx(0.3));
}

TEST_CASE("a published sentence decodes") {
    // widely circulated example sentence
    const auto out = decode_sentence("!AIVDM,1,1,,B,15M67FC000G?ufbE`FepT@3n00Sa,0*5C");
    const auto& r = std::get<PositionReport>(std::get<AisMessage>(out));
    CHECK(r.msg_type == 1);
    CHECK(r.mmsi == 366'053'209u);
    CHECK(*sog_knots(r) == doctest::Approx(0.0));
    CHECK(*lat_deg(r) == doctest::Approx(37.802118).epsilon(1e-7));
    CHECK(*lon_deg(r) == doctest::Approx(-122.341618).epsilon(1e-7));
}

TEST_CASE("not-available sentinels") {
    PositionReport r = sample_position();
    r.lat = kLatNotAvailable;
    r.lon = kLonNotAvailable;
    r.sog = kSogNotAvailable;
    CHECK_FALSE(lat_deg(r).has_value());
    CHECK_FALSE(lon_deg(r).has_value());
    CHECK_FALSE(sog_knots(r).has_value());
    StaticVoyage s = sample_static();
    s.draught = 0;
    CHECK_FALSE(draught_m(s).has_value());
    s.draught = 142;
    CHECK(*draught_m(s) == doctest::Approx(14.2));
}

TEST_CASE("two-part type 5 assembles") {
    const StaticVoyage s = sample_static();
    int fill = 0;
    const std::string payload = encode_static(s, fill);
    CHECK(payload.size() == 71);
    CHECK(fill == 2);
    const auto lines = sentences(payload, fill, 60, "3", "B");
    REQUIRE(lines.size() == 2);
    FragmentAssembler assembler;
    const auto first = decode_sentence(lines[0]);
    REQUIRE(std::holds_alternative<Fragment>(first));
    CHECK_FALSE(assembler.add(std::get<Fragment>(first)).has_value());
    CHECK(assembler.pending() == 1);
    const auto second = decode_sentence(lines[1]);
    REQUIRE(std::holds_alternative<Fragment>(second));
    const auto msg = assembler.add(std::get<Fragment>(second));
    REQUIRE(msg.has_value());
    CHECK(std::get<StaticVoyage>(*msg) == s);
    CHECK(assembler.pending() == 0);

    SUBCASE("out-of-order parts are discarded") {
        FragmentAssembler a2;
        CHECK_FALSE(a2.add(std::get<Fragment>(second)).has_value());
        CHECK(a2.discarded() == 1);
    }
}

TEST_CASE("decode of encode is the identity on random payloads") {
    synth::Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        PositionReport r;
        r.msg_type = static_cast<std::uint8_t>(rng.integer(1, 3));
        r.repeat = static_cast<std::uint8_t>(rng.integer(0, 3));
        r.mmsi = static_cast<std::uint32_t>(rng.integer(0, (1 << 30) - 1));
        r.nav_status = static_cast<std::uint8_t>(rng.integer(0, 15));
        r.rot = static_cast<std::int8_t>(rng.integer(-128, 127));
        r.sog = static_cast<std::uint16_t>(rng.integer(0, 1023));
        r.position_accuracy = rng.uniform() < 0.5;
        r.lon = static_cast<std::int32_t>(rng.integer(-108'000'000, 108'600'000));
        r.lat = static_cast<std::int32_t>(rng.integer(-54'000'000, 54'600'000));
        r.cog = static_cast<std::uint16_t>(rng.integer(0, 4095));
        r.heading = static_cast<std::uint16_t>(rng.integer(0, 511));
        r.utc_second = static_cast<std::uint8_t>(rng.integer(0, 63));
        r.maneuver = static_cast<std::uint8_t>(rng.integer(0, 3));
        r.spare = static_cast<std::uint8_t>(rng.integer(0, 7));
        r.raim = rng.uniform() < 0.5;
        r.radio = static_cast<std::uint32_t>(rng.integer(0, (1 << 19) - 1));
        int fill = 0;
        const auto payload = encode_position(r, fill);
        CHECK(std::get<PositionReport>(decode_payload(payload, fill)) == r);
    }
}

TEST_CASE("every single-character corruption is rejected") {
    int fill = 0;
    const std::string line = sentences(encode_position(sample_position(), fill), fill)[0];
    const std::string alphabet = "!$,*0123456789:;<=>?@ABCDEFGHIJKLMNOPQRSTUVWXYZ[\\]^_`abcdefghijklmnopqrstuvw";
    std::size_t tried = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        for (const char c : alphabet) {
            if (c == line[i]) continue;
            std::string bad = line;
            bad[i] = c;
            ++tried;
            CAPTURE(bad);
            const Errc e = code_of(bad);
            if (i == 0) {
                CHECK(e == Errc::MalformedSentence);
            } else {
                CHECK(e == Errc::ChecksumMismatch);
            }
        }
    }
    CHECK(tried > 1000);
}

TEST_CASE("structural errors") {
    CHECK(code_of("AIVDM,1,1,,A,15M67FC000G?ufbE`FepT@3n00Sa,0*5C") == Errc::MalformedSentence);
    CHECK(code_of("!AIVDM,1,1,,B,15M67FC000G?ufbE`FepT@3n00Sa,0") == Errc::ChecksumMismatch);
    CHECK(code_of(testsupport::wrap("GPGGA,1,2,3,4,5,6")) == Errc::MalformedSentence);
    CHECK(code_of(testsupport::wrap("AIVDM,1,1,,A,15M67FC000G?uf,0")) == Errc::TruncatedPayload);
    // type 18 is outside the supported set
    testsupport::BitWriter w;
    w.put(18, 6);
    for (int i = 0; i < 27; ++i) w.put(0, 6);
    int fill = 0;
    CHECK(code_of(testsupport::sentences(w.armor(fill), fill)[0]) == Errc::UnsupportedMessageType);
}

TEST_CASE("stream decoding") {
    PositionReport r = sample_position();
    int fill = 0;
    const std::string pos1 = sentences(encode_position(r, fill), fill)[0];
    r.lat = kLatNotAvailable;
    const std::string no_pos = sentences(encode_position(r, fill), fill)[0];
    r = sample_position();
    r.lat += 600;  // 0.001 deg north
    const std::string pos2 = sentences(encode_position(r, fill), fill)[0];
    const auto statics = sentences(encode_static(sample_static(), fill), fill, 60, "5", "A");

    std::string text;
    text += "\\s:rx1,c:1677628800*00\\" + pos1 + "\n";
    text += "2023-03-01T00:01:00Z " + statics[0] + "\n";
    text += "2023-03-01T00:01:00Z " + statics[1] + "\n";
    text += "2023-03-01T00:02:00Z " + no_pos + "\n";
    text += "\\c:1677628980000*00\\" + pos2 + "\n";
    text += pos2 + "\n";                                  // no reception time
    text += "2023-03-01T00:04:00Z !AIVDM,1,1,,B,15M6,0*00\n";  // bad checksum
    text += "\n";
    const auto res = decode_stream(text);
    CHECK(res.stats.lines == 7);
    CHECK(res.stats.position_reports == 4);
    CHECK(res.stats.messages == 5);
    CHECK(res.stats.static_reports == 1);
    CHECK(res.stats.untimed == 1);
    CHECK(res.stats.checksum_errors == 1);
    CHECK(res.stats.rejected_fixes == 1);
    REQUIRE(res.fixes.size() == 2);
    CHECK(res.fixes[0].vessel_id == "273451000");
    CHECK(to_unix(res.fixes[0].t) == 1'677'628'800);
    CHECK_FALSE(res.fixes[0].draught.has_value());
    CHECK(to_unix(res.fixes[1].t) == 1'677'628'980);
    CHECK(res.fixes[1].pos.lat() == doctest::Approx(45.251));
    REQUIRE(res.fixes[1].draught.has_value());
    CHECK(*res.fixes[1].draught == doctest::Approx(14.2));
    REQUIRE(res.statics.count(273'451'000u) == 1);
    const auto rec = to_vessel_record(res.statics.at(273'451'000u));
    REQUIRE(rec.has_value());
    CHECK(rec->vessel_id == "273451000");
    CHECK(rec->imo == 9'074'729u);
    CHECK(rec->length == doctest::Approx(250));
    CHECK(rec->beam == doctest::Approx(44));
    CHECK(rec->cargo_family == ais::CargoFamily::Other);
}

TEST_CASE("decoding is deterministic") {
    const std::string line = "!AIVDM,1,1,,B,15M67FC000G?ufbE`FepT@3n00Sa,0*5C";
    CHECK(std::get<PositionReport>(std::get<AisMessage>(decode_sentence(line))) ==
          std::get<PositionReport>(std::get<AisMessage>(decode_sentence(line))));
}

}  // TEST_SUITE
