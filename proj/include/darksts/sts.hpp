// Loitering-pair detection on AIS tracks.
//
// Tracks are resampled onto a common time grid (multiples of the resample
// step since the Unix epoch). At every grid slice each pair of vessels that
// are both below the speed threshold and within the distance threshold
// contributes a "together" sample. Runs of together samples whose spacing
// never exceeds max_gap, and which span at least min_duration, become
// events. detect_sts finds candidate pairs with a per-slice uniform grid;
// brute_force_sts scans every pair and is kept as the reference.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/classify.hpp"
#include "darksts/geo.hpp"
#include "darksts/time.hpp"

namespace darksts::sts {

struct StsParams {
    double max_distance_m = 500.0;
    Seconds min_duration{7'200};
    double max_sog_kn = 1.0;
    Seconds resample_step{300};
    Seconds max_gap{1'800};

    /// Throws Error{ConfigInvalid}.
    void validate() const;
};

struct GridFix {
    std::int64_t slot = 0;  // time = slot * step
    geo::GeoPoint pos;
    double sog = 0.0;
};

/// Linear interpolation onto grid times within every pair of consecutive
/// fixes at most `max_gap` apart (endpoints included when on the grid).
std::vector<GridFix> resample_track(const ais::Track& track, Seconds step, Seconds max_gap);

struct StsEvent {
    std::string vessel_a;  // vessel_a < vessel_b
    std::string vessel_b;
    Timestamp start;
    Timestamp end;
    geo::GeoPoint midpoint;
    classify::StsClass sts_class = classify::StsClass::StsMixed;
    double mean_separation_m = 0.0;

    Seconds duration() const { return end - start; }
    bool active_at(Timestamp t) const { return start <= t && t <= end; }
};

/// Indexed detector. `workers` > 1 splits the slice loop across threads;
/// the result is identical to the single-threaded run.
std::vector<StsEvent> detect_sts(std::span<const ais::Track> tracks, const StsParams& params, unsigned workers = 1);

/// All-pairs reference implementation of the same predicate.
std::vector<StsEvent> brute_force_sts(std::span<const ais::Track> tracks, const StsParams& params);

/// Canonical order: (vessel_a, vessel_b, start).
void sort_events(std::vector<StsEvent>& events);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string format_events_csv(std::span<const StsEvent> events);
std::vector<StsEvent> parse_events_csv(std::string_view text);
std::string format_events_geojson(std::span<const StsEvent> events, const ConfigEcho& config);

}  // namespace darksts::sts
