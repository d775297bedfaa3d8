// Audit of image-space STS detections against AIS presence.
//
// A detection is dark when fewer than `min_identities` distinct vessel ids
// report a position within `radius_m` of the detection's ground position
// during the +/- `window` around the scene acquisition. Draught changes of
// the vessels that are present are reported as supporting evidence only.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/classify.hpp"
#include "darksts/geo.hpp"
#include "darksts/scene.hpp"
#include "darksts/sts.hpp"
#include "darksts/time.hpp"

namespace darksts::dark {

struct BBox {
    double x0 = 0.0;
    double y0 = 0.0;
    double w = 0.0;
    double h = 0.0;

    friend bool operator==(const BBox&, const BBox&) = default;
};

struct Detection {
    std::string scene_id;
    classify::TileLabel class_label = classify::TileLabel::GeneralCargo;
    BBox bbox;
    double confidence = 0.0;
    // derived from the scene on load
    geo::GeoPoint geo_center;
    Timestamp acquired_at;

    friend bool operator==(const Detection&, const Detection&) = default;
};

/// Builds a Detection, deriving the ground position from the bbox center.
/// Throws Error{MalformedRow} for a bbox outside the scene or a confidence
/// outside [0, 1].
Detection make_detection(const scene::SceneMeta& scene, classify::TileLabel label, BBox bbox, double confidence);

/// detections.csv: scene_id,class_label,x0,y0,w,h,confidence.
/// Throws Error{MissingScene} or Error{MalformedRow}.
std::vector<Detection> parse_detections(std::string_view text, std::span<const scene::SceneMeta> scenes);
std::vector<Detection> load_detections(const std::filesystem::path& path, std::span<const scene::SceneMeta> scenes);
std::string format_detections(std::span<const Detection> detections);

inline constexpr Seconds kDefaultWindow{43'200};

struct AuditParams {
    double radius_m = 500.0;
    Seconds window = kDefaultWindow;  // each side of the acquisition
    std::size_t min_identities = 2;

    /// Throws Error{ConfigInvalid}.
    void validate() const;
};

struct DraughtDelta {
    std::string vessel_id;
    double delta_m = 0.0;
};

struct DarkVerdict {
    Detection detection;
    std::vector<std::string> distinct_identities;  // sorted
    bool is_dark = false;
    std::vector<DraughtDelta> draught_deltas;
    Timestamp window_start;
    Timestamp window_end;
};

/// Read-only spatiotemporal index over every fix of a track set: fixed-size
/// time buckets crossed with a lat/lon grid whose cells are `cell_m` tall.
class FixIndex {
public:
    FixIndex(std::span<const ais::Track> tracks, double cell_m, Seconds bucket);

    /// Calls fn(track_index, fix) for every fix with |t - at| <= window and
    /// haversine(fix, center) <= radius_m.
    template <typename Fn>
    void query(const geo::GeoPoint& center, double radius_m, Timestamp at, Seconds window, Fn&& fn) const;

    std::span<const ais::Track> tracks() const noexcept { return tracks_; }

private:
    struct Ref {
        std::uint32_t track;
        std::uint32_t fix;
    };
    struct KeyHash {
        std::size_t operator()(const std::array<std::int64_t, 3>& k) const noexcept;
    };

    std::int64_t row_of(double lat) const;
    std::int64_t col_of(double lon) const;
    std::vector<std::int64_t> columns_around(const geo::GeoPoint& center, double radius_m) const;

    std::span<const ais::Track> tracks_;
    double cell_deg_;
    std::int64_t columns_;
    std::int64_t bucket_s_;
    std::unordered_map<std::array<std::int64_t, 3>, std::vector<Ref>, KeyHash> cells_;
};

/// Throws Error{NotAnStsDetection} for non-STS labels.
DarkVerdict audit_detection(const Detection& d, const FixIndex& index, const AuditParams& params);
DarkVerdict audit_detection(const Detection& d, std::span<const ais::Track> tracks, const AuditParams& params);

struct DayCounts {
    std::size_t sts = 0;
    std::size_t dark = 0;
};

struct DarkStsReport {
    AuditParams params;
    std::size_t total_detections = 0;
    std::size_t sts_detections = 0;
    std::size_t dark_count = 0;
    std::map<std::string, std::size_t> class_census;
    std::map<std::string, std::size_t> dark_participation;  // vessel -> dark verdicts it appears in
    std::map<std::string, DayCounts> timeline;               // UTC date -> counts
    std::vector<DarkVerdict> verdicts;                       // STS detections, input order
};

DarkStsReport scan(std::span<const Detection> detections, std::span<const ais::Track> tracks,
                   const AuditParams& params, unsigned workers = 1);

std::string format_report_geojson(const DarkStsReport& report, const sts::ConfigEcho& config);
std::string format_summary_json(const DarkStsReport& report, const sts::ConfigEcho& config);

// ---------------------------------------------------------------------------

template <typename Fn>
void FixIndex::query(const geo::GeoPoint& center, double radius_m, Timestamp at, Seconds window, Fn&& fn) const {
    const std::int64_t t0 = to_unix(at);
    const std::int64_t w = window.count();
    const auto floor_div = [](std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && (a < 0)); };
    const double dlat = radius_m / geo::kMetersPerDegree * (1.0 + 1e-6);
    const std::int64_t r0 = row_of(center.lat() - dlat);
    const std::int64_t r1 = row_of(center.lat() + dlat);
    const auto cols = columns_around(center, radius_m);
    for (std::int64_t b = floor_div(t0 - w, bucket_s_); b <= floor_div(t0 + w, bucket_s_); ++b) {
        for (std::int64_t r = r0; r <= r1; ++r) {
            for (const std::int64_t c : cols) {
                const auto it = cells_.find({b, r, c});
                if (it == cells_.end()) {
                    continue;
                }
                for (const Ref ref : it->second) {
                    const auto& fix = tracks_[ref.track].fixes[ref.fix];
                    const std::int64_t dt = to_unix(fix.t) - t0;
                    if (dt < -w || dt > w) {
                        continue;
                    }
                    if (geo::haversine_distance(fix.pos, center) <= radius_m) {
                        fn(ref.track, fix);
                    }
                }
            }
        }
    }
}

}  // namespace darksts::dark
