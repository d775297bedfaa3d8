// Deterministic synthetic scenarios with planted ground truth.
//
// Vessels sit on a square lattice of anchorage slots around the region
// center, with transits running on lanes north and south of the lattice.
// Each planted transfer uses a dedicated pair: the "host" stays at an event
// site (a slot with even row and column, so no two sites share a scene), the
// "visitor" leaves its own mooring 1.5 km east, holds station next to the
// host for the event, and returns. Dark events delete one participant's
// fixes over the audit window around the scene. The layout guarantees that
// no other vessel comes within the STS or audit radius of a site.
//
// Randomness comes from std::mt19937_64 seeded with the scenario seed; the
// uniform and normal draws are computed here rather than through
// <random> distributions, whose algorithms differ between standard
// libraries.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/classify.hpp"
#include "darksts/dark.hpp"
#include "darksts/geo.hpp"
#include "darksts/scene.hpp"
#include "darksts/sts.hpp"
#include "darksts/time.hpp"

namespace darksts::synth {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi);
    /// Box-Muller.
    double normal(double mean, double sigma);

private:
    std::mt19937_64 engine_;
};

struct SynthConfig {
    std::size_t vessel_count = 30;
    Seconds duration{48 * 3600};
    std::size_t sts_count = 10;
    double dark_fraction = 0.0;
    geo::GeoPoint region_center{45.25, 36.5};
    Timestamp start = from_unix(1'677'628'800);  // 2023-03-01T00:00:00Z
    Seconds report_interval{180};                // mean spacing of AIS reports
    double transit_fraction = 0.2;               // share of background vessels under way
    double slot_spacing_m = 6'000.0;
    double resolution_m = scene::kDefaultResolutionM;
    sts::StsParams sts;
    dark::AuditParams audit;

    /// Throws Error{ConfigInvalid}.
    void validate() const;
};

struct PlantedEvent {
    std::string event_id;
    std::string scene_id;
    std::string vessel_a;  // vessel_a < vessel_b
    std::string vessel_b;
    Timestamp start;
    Timestamp end;
    classify::StsClass sts_class = classify::StsClass::StsCargo;
    double separation_m = 0.0;
    geo::GeoPoint site;
    bool dark = false;
    std::string suppressed_vessel;       // empty unless dark
    std::vector<std::string> bystanders;  // background vessels inside the scene
};

struct Scenario {
    std::uint64_t seed = 0;
    SynthConfig config;
    std::vector<ais::VesselRecord> registry;
    std::vector<ais::PositionFix> fixes;
    std::vector<scene::SceneMeta> scenes;
    std::vector<PlantedEvent> truth;
    std::vector<dark::Detection> detections;
};

Scenario generate_scenario(std::uint64_t seed, const SynthConfig& config);

/// Writes positions.csv, registry.csv, scenes.csv, detections.csv and
/// truth.csv. Throws Error{IoFailure}.
void export_scenario(const Scenario& s, const std::filesystem::path& dir);

std::string format_truth(std::span<const PlantedEvent> truth);
std::vector<PlantedEvent> parse_truth(std::string_view text);

}  // namespace darksts::synth
