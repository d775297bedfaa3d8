#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/error.hpp"
#include "darksts/synth.hpp"
#include "darksts/time.hpp"

using namespace darksts;
using namespace darksts::ais;

namespace {

PositionFix fix(const std::string& id, std::int64_t t, double lat, double lon, double sog = 0.0) {
    return {id, from_unix(t), geo::GeoPoint(lat, lon), sog, std::nullopt};
}

}  // namespace

TEST_SUITE("ais") {

TEST_CASE("position table keeps valid rows and counts the rest") {
    const std::string text =
        "vessel_id,timestamp,lat,lon,sog,draught\n"
        "273000001,2023-03-01T00:00:00Z,45.1,36.5,0.2,7.5\n"
        "273000001,2023-03-01T00:05:00Z,45.1,36.5,0.1,\n"
        "273000002,2023-03-01T00:05:00Z,91,36.5,0.1,\n"
        "273000002,2023-03-01T00:10:00Z,45.2,36.6,12.4,0\n";
    const auto table = parse_position_table(text);
    CHECK(table.fixes.size() == 3);
    CHECK(table.rejected == 1);
    CHECK(table.fixes[0].draught == 7.5);
    CHECK_FALSE(table.fixes[1].draught.has_value());
    CHECK_FALSE(table.fixes[2].draught.has_value());
    CHECK(table.fixes[2].sog == 12.4);
}

TEST_CASE("position table rejects each kind of bad field") {
    const std::string header = "vessel_id,timestamp,lat,lon,sog,draught\n";
    for (const std::string row : {"a,2023-03-01T00:00:00Z,45,181,0,",
                                  "a,2023-03-01T00:00:00Z,45,36,102.3,",
                                  "a,2023-03-01T00:00:00Z,45,36,-1,",
                                  "a,2023-03-01T00:00:00Z,45,36,1,31",
                                  "a,not-a-time,45,36,1,",
                                  "a,2023-03-01T00:00:00Z,x,36,1,",
                                  ",2023-03-01T00:00:00Z,45,36,1,",
                                  "a,2023-03-01T00:00:00Z,45,36"}) {
        CAPTURE(row);
        const auto t = parse_position_table(header + row + "\n");
        CHECK(t.fixes.empty());
        CHECK(t.rejected == 1);
    }
}

TEST_CASE("position table header handling") {
    CHECK(parse_position_table("vessel_id,timestamp,lat,lon,sog,draught\n").fixes.empty());
    // column order is taken from the header
    const auto t = parse_position_table("lat,lon,vessel_id,timestamp,sog,draught\n45,36,x,2023-03-01 01:00:00,0,\n");
    REQUIRE(t.fixes.size() == 1);
    CHECK(t.fixes[0].vessel_id == "x");
    CHECK(to_unix(t.fixes[0].t) == 1'677'632'400);
    try {
        parse_position_table("vessel_id,timestamp,lat,lon,draught\n");
        FAIL("expected MissingColumn");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MissingColumn);
    }
    try {
        parse_position_table("");
        FAIL("expected EmptyFile");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyFile);
    }
}

TEST_CASE("position table round trip") {
    synth::Rng rng(9);
    std::vector<PositionFix> fixes;
    for (int i = 0; i < 300; ++i) {
        PositionFix f = fix("v" + std::to_string(i % 7), 1'677'628'800 + i * 61, rng.uniform(-90, 90),
                            rng.uniform(-180, 180), rng.uniform(0, 102.2));
        if (i % 3 == 0) f.draught = rng.uniform(0.1, 30);
        fixes.push_back(f);
    }
    const auto back = parse_position_table(format_position_table(fixes));
    CHECK(back.rejected == 0);
    CHECK(back.fixes == fixes);
}

TEST_CASE("imo check digit") {
    CHECK(valid_imo(9074729));
    CHECK_FALSE(valid_imo(9074728));
    CHECK(make_imo(907472) == 9074729);
    CHECK_FALSE(valid_imo(123));
}

TEST_CASE("registry parsing") {
    const std::string text =
        "vessel_id,imo,name,length_m,beam_m,dwt,cargo_family\n"
        "273000001,9074729,\"ALPHA, THE\",180,30,45000,Dry\n"
        "273000002,,BRAVO,250,44,160000,liquid\n"
        "273000003,9074728,CHARLIE,100,15,3000,Dry\n"
        "273000004,,DELTA,5,2,10,Dry\n"
        "273000005,,ECHO,100,120,10,Dry\n"
        "273000001,,DUP,100,15,3000,Dry\n"
        "273000006,,FOX,100,15,3000,Gas\n";
    const auto reg = parse_registry(text);
    REQUIRE(reg.vessels.size() == 2);
    CHECK(reg.rejected == 5);
    CHECK(reg.vessels[0].name == "ALPHA, THE");
    CHECK(reg.vessels[0].imo == 9074729u);
    CHECK(reg.vessels[1].cargo_family == CargoFamily::Liquid);
    CHECK_FALSE(reg.vessels[1].imo.has_value());
    CHECK(parse_registry(format_registry(reg.vessels)).vessels == reg.vessels);
}

TEST_CASE("build tracks") {
    std::vector<PositionFix> fixes;
    for (int i = 0; i < 10; ++i) {
        fixes.push_back(fix("b", 1000 + 60 * (9 - i), 45, 36));
        fixes.push_back(fix("a", 1000 + 60 * i, 45, 36));
    }
    const VesselRecord ra{"a", std::nullopt, "A", 100, 15, 3000, CargoFamily::Dry};
    const VesselRecord rb{"b", std::nullopt, "B", 100, 15, 3000, CargoFamily::Liquid};
    const std::vector<VesselRecord> registry{ra, rb};
    const auto tracks = build_tracks(fixes, registry);
    REQUIRE(tracks.size() == 2);
    for (const auto& t : tracks) {
        CHECK(t.fixes.size() == 10);
        CHECK_FALSE(t.unregistered);
        CHECK(std::is_sorted(t.fixes.begin(), t.fixes.end(),
                             [](const PositionFix& x, const PositionFix& y) { return x.t < y.t; }));
    }
    CHECK(tracks[0].vessel == ra);

    SUBCASE("duplicates collapse to one fix") {
        auto dup = fixes;
        dup.push_back(fixes[0]);
        const auto t2 = build_tracks(dup, registry);
        CHECK(t2 == tracks);
    }
    SUBCASE("unknown vessels are kept and flagged") {
        auto more = fixes;
        more.push_back(fix("zz", 5000, 45, 36));
        const auto t3 = build_tracks(more, registry);
        REQUIRE(t3.size() == 3);
        CHECK(t3[2].unregistered);
        CHECK(t3[2].vessel.vessel_id == "zz");
        CHECK(t3[2].vessel.cargo_family == CargoFamily::Other);
    }
}

TEST_CASE("build tracks ignores input order") {
    synth::Rng rng(21);
    std::vector<PositionFix> fixes;
    for (int i = 0; i < 400; ++i) {
        fixes.push_back(fix("v" + std::to_string(rng.integer(0, 9)), rng.integer(0, 100'000), rng.uniform(40, 50),
                            rng.uniform(30, 40), rng.uniform(0, 10)));
    }
    // identical (vessel, t) keys must carry identical rows for the order not to matter
    std::sort(fixes.begin(), fixes.end(), [](const PositionFix& a, const PositionFix& b) {
        return std::tie(a.vessel_id, a.t) < std::tie(b.vessel_id, b.t);
    });
    fixes.erase(std::unique(fixes.begin(), fixes.end(),
                            [](const PositionFix& a, const PositionFix& b) {
                                return a.vessel_id == b.vessel_id && a.t == b.t;
                            }),
                fixes.end());
    const auto reference = build_tracks(fixes, {});
    for (int round = 0; round < 20; ++round) {
        auto shuffled = fixes;
        for (std::size_t i = shuffled.size(); i > 1; --i) {
            std::swap(shuffled[i - 1], shuffled[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(i) - 1))]);
        }
        CHECK(build_tracks(shuffled, {}) == reference);
    }
}

}  // TEST_SUITE
