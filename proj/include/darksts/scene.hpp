#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/classify.hpp"
#include "darksts/geo.hpp"
#include "darksts/sts.hpp"
#include "darksts/time.hpp"

namespace darksts::scene {

inline constexpr double kDefaultCloudThreshold = 0.7;
inline constexpr double kDefaultResolutionM = 3.0;
inline constexpr double kDefaultBufferM = 500.0;
inline constexpr Seconds kDefaultMaxTimeDelta{7'200};

/// Satellite scene metadata with a north-up affine georeference: pixel (0, 0)
/// is `origin` (upper-left corner), x grows east and y grows south by
/// `resolution_m` meters per pixel in the tangent plane at the origin.
struct SceneMeta {
    std::string scene_id;
    Timestamp acquired_at;
    std::vector<geo::GeoPoint> footprint;
    double resolution_m = kDefaultResolutionM;
    double cloud_score = 0.0;
    geo::GeoPoint origin;
    std::int64_t width = 0;
    std::int64_t height = 0;

    /// Throws Error{ConfigInvalid} or Error{DegeneratePolygon}.
    void validate() const;
};

/// Scenes above the cloud threshold never reach a manifest.
inline bool is_usable(const SceneMeta& s, double cloud_threshold = kDefaultCloudThreshold) noexcept {
    return s.cloud_score <= cloud_threshold;
}

struct PixelPoint {
    double x = 0.0;
    double y = 0.0;
};

/// Throws Error{OutOfScene} when `p` lies outside the footprint's bounding box.
PixelPoint geo_to_pixel(const SceneMeta& scene, const geo::GeoPoint& p);

/// Throws Error{OutOfScene} outside [0, width] x [0, height].
geo::GeoPoint pixel_to_geo(const SceneMeta& scene, PixelPoint px);

struct FixMatch {
    std::string vessel_id;
    classify::ShipClass ship_class = classify::ShipClass::Unknown;
    ais::PositionFix fix;
    Seconds delta{0};  // fix.t - acquired_at
};

/// Per vessel, the fix closest in time to the acquisition (ties go to the
/// earlier fix), kept only if within `max_time_delta` and inside the
/// footprint.
std::vector<FixMatch> match_fixes_to_scene(const SceneMeta& scene, std::span<const ais::Track> tracks,
                                           Seconds max_time_delta = kDefaultMaxTimeDelta);

struct PixelWindow {
    std::int64_t x0 = 0;
    std::int64_t y0 = 0;
    std::int64_t w = 0;
    std::int64_t h = 0;

    friend bool operator==(const PixelWindow&, const PixelWindow&) = default;
};

struct TileRecord {
    std::string scene_id;
    geo::GeoPoint center;
    double extent_m = 0.0;
    PixelWindow window;
    classify::TileLabel label = classify::TileLabel::GeneralCargo;
    std::vector<std::string> vessels;
    Seconds ais_time_delta{0};
};

/// Tile side in pixels for a square of `extent_m` meters.
std::int64_t tile_pixels(double extent_m, double resolution_m);

/// One tile per active event with a matched participant (centered on the
/// event midpoint) and one per remaining matched vessel whose class is in the
/// taxonomy. Windows are shifted to lie inside the scene, or clipped when the
/// scene is smaller than a tile.
std::vector<TileRecord> make_tiles(const SceneMeta& scene, std::span<const FixMatch> matches,
                                   std::span<const sts::StsEvent> events, double buffer_m = kDefaultBufferM);

std::string format_manifest(std::span<const TileRecord> tiles);

/// "POLYGON ((lon lat, lon lat, ...))"
std::string format_wkt(std::span<const geo::GeoPoint> ring);
std::vector<geo::GeoPoint> parse_wkt_polygon(std::string_view wkt);

/// Throws Error{EmptyFile}, Error{MissingColumn}, Error{MalformedRow}.
std::vector<SceneMeta> parse_scenes(std::string_view text);
std::vector<SceneMeta> load_scenes(const std::filesystem::path& path);
std::string format_scenes(std::span<const SceneMeta> scenes);

}  // namespace darksts::scene
