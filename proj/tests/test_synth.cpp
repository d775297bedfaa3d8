#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"
#include "darksts/sts.hpp"
#include "darksts/synth.hpp"
#include "support/oracles.hpp"

using namespace darksts;
using namespace darksts::synth;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("darksts_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::set<std::pair<std::string, std::string>> pairs_of(const std::vector<sts::StsEvent>& ev) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& e : ev) out.insert({e.vessel_a, e.vessel_b});
    return out;
}

SynthConfig small(std::size_t sts, double dark) {
    SynthConfig c;
    c.vessel_count = 20;
    c.sts_count = sts;
    c.dark_fraction = dark;
    return c;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("rng") {
    Rng a(1), b(1);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
    Rng r(2);
    double sum = 0, sq = 0;
    for (int i = 0; i < 20'000; ++i) {
        const auto k = r.integer(-3, 3);
        CHECK(k >= -3);
        CHECK(k <= 3);
        const double x = r.normal(1.0, 2.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / 20'000;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
    CHECK(sq / 20'000 - mean * mean == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("the same seed writes the same bytes") {
    const auto d1 = scratch("det1"), d2 = scratch("det2");
    export_scenario(generate_scenario(5, small(5, 0.4)), d1);
    export_scenario(generate_scenario(5, small(5, 0.4)), d2);
    for (const char* f : {"positions.csv", "registry.csv", "scenes.csv", "detections.csv", "truth.csv"}) {
        CAPTURE(f);
        CHECK(csv::read_file(d1 / f) == csv::read_file(d2 / f));
    }
    CHECK(csv::read_file(d1 / "positions.csv") !=
          [&] {
              const auto d3 = scratch("det3");
              export_scenario(generate_scenario(6, small(5, 0.4)), d3);
              return csv::read_file(d3 / "positions.csv");
          }());
}

TEST_CASE("planted transfers are recovered") {
    const auto sc = generate_scenario(7, small(5, 0.0));
    REQUIRE(sc.truth.size() == 5);
    const auto tracks = ais::build_tracks(sc.fixes, sc.registry);
    const auto fast = sts::detect_sts(tracks, sc.config.sts);
    CHECK(testsupport::same_events(fast, sts::brute_force_sts(tracks, sc.config.sts)));
    std::set<std::pair<std::string, std::string>> planted;
    for (const auto& e : sc.truth) planted.insert({e.vessel_a, e.vessel_b});
    CHECK(pairs_of(fast) == planted);
    for (const auto& e : sc.truth) {
        const auto it = std::find_if(fast.begin(), fast.end(), [&](const sts::StsEvent& f) {
            return f.vessel_a == e.vessel_a && f.vessel_b == e.vessel_b;
        });
        REQUIRE(it != fast.end());
        CHECK(it->start <= e.start + sc.config.sts.resample_step);
        CHECK(it->end >= e.end - sc.config.sts.resample_step);
        CHECK(it->sts_class == e.sts_class);
        CHECK(e.separation_m <= sc.config.sts.max_distance_m);
    }
}

TEST_CASE("dark share") {
    const auto sc = generate_scenario(3, [] {
        auto c = small(10, 0.4);
        c.vessel_count = 30;
        return c;
    }());
    std::size_t dark = 0;
    for (const auto& e : sc.truth) {
        if (e.dark) {
            ++dark;
            CHECK((e.suppressed_vessel == e.vessel_a || e.suppressed_vessel == e.vessel_b));
        } else {
            CHECK(e.suppressed_vessel.empty());
        }
    }
    CHECK(dark == 4);
    CHECK(sc.scenes.size() == 10);
    std::size_t sts_detections = 0;
    for (const auto& d : sc.detections) sts_detections += classify::is_sts_label(d.class_label);
    CHECK(sts_detections == 10);
}

TEST_CASE("export and re-ingest") {
    const auto sc = generate_scenario(9, small(4, 0.5));
    const auto dir = scratch("reingest");
    export_scenario(sc, dir);
    const auto table = ais::load_position_table(dir / "positions.csv");
    const auto reg = ais::load_registry(dir / "registry.csv");
    CHECK(table.rejected == 0);
    CHECK(reg.rejected == 0);
    CHECK(ais::build_tracks(table.fixes, reg.vessels) == ais::build_tracks(sc.fixes, sc.registry));
    const auto scenes = scene::load_scenes(dir / "scenes.csv");
    CHECK(scenes.size() == sc.scenes.size());
    CHECK(dark::load_detections(dir / "detections.csv", scenes) == sc.detections);
    const auto truth = parse_truth(csv::read_file(dir / "truth.csv"));
    REQUIRE(truth.size() == sc.truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(truth[i].event_id == sc.truth[i].event_id);
        CHECK(truth[i].vessel_a == sc.truth[i].vessel_a);
        CHECK(truth[i].start == sc.truth[i].start);
        CHECK(truth[i].dark == sc.truth[i].dark);
        CHECK(truth[i].suppressed_vessel == sc.truth[i].suppressed_vessel);
        CHECK(truth[i].bystanders == sc.truth[i].bystanders);
    }
}

TEST_CASE("a scenario without events") {
    const auto sc = generate_scenario(1, small(0, 0.0));
    CHECK(sc.truth.empty());
    CHECK(sc.scenes.empty());
    CHECK(sc.registry.size() == 20);
    CHECK(sts::detect_sts(ais::build_tracks(sc.fixes, sc.registry), sc.config.sts).empty());
    const auto dir = scratch("empty");
    export_scenario(sc, dir);
    CHECK(csv::read_file(dir / "truth.csv").find('\n') == csv::read_file(dir / "truth.csv").size() - 1);
    CHECK(parse_truth(csv::read_file(dir / "truth.csv")).empty());
}

TEST_CASE("invalid configurations") {
    const auto bad = [](auto tweak) {
        auto c = small(5, 0.0);
        tweak(c);
        try {
            generate_scenario(1, c);
        } catch (const Error& e) {
            return e.code() == Errc::ConfigInvalid;
        }
        return false;
    };
    CHECK(bad([](SynthConfig& c) { c.vessel_count = 9; }));
    CHECK(bad([](SynthConfig& c) { c.dark_fraction = 1.5; }));
    CHECK(bad([](SynthConfig& c) { c.duration = Seconds{0}; }));
    CHECK(bad([](SynthConfig& c) { c.duration = Seconds{6 * 3600}; }));
    CHECK(bad([](SynthConfig& c) { c.report_interval = Seconds{1'500}; }));
    CHECK(bad([](SynthConfig& c) { c.sts.max_distance_m = 2'000; }));
    CHECK(bad([](SynthConfig& c) { c.slot_spacing_m = 1'000; }));
    CHECK(bad([](SynthConfig& c) { c.audit.radius_m = -1; }));
}

}  // TEST_SUITE
