// Spherical-earth geodesy used by every spatial predicate in the pipeline.
//
// Distances are great-circle distances on a sphere of mean radius
// 6,371,008.8 m. Local geometry (tiles, interpolation) uses an
// equirectangular tangent plane anchored at an origin point, which is only
// meaningful for offsets below 100 km.
#pragma once

#include <numbers>
#include <span>

namespace darksts::geo {

inline constexpr double kEarthRadiusM = 6'371'008.8;
inline constexpr double kDegToRad = std::numbers::pi / 180.0;
/// Meters per degree of arc on the sphere.
inline constexpr double kMetersPerDegree = kEarthRadiusM * kDegToRad;
inline constexpr double kMaxLocalOffsetM = 100'000.0;

/// Wraps a longitude into [-180, 180).
double normalize_lon(double lon) noexcept;

/// WGS84 latitude/longitude in degrees. Longitude is normalized at
/// construction; latitude outside [-90, 90] or non-finite input throws
/// Error{OutOfRange}.
class GeoPoint {
public:
    GeoPoint() = default;
    GeoPoint(double lat, double lon);

    double lat() const noexcept { return lat_; }
    double lon() const noexcept { return lon_; }

    friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

private:
    double lat_ = 0.0;
    double lon_ = 0.0;
};

struct LocalOffset {
    double east = 0.0;   // meters
    double north = 0.0;  // meters

    double norm() const noexcept;
};

double haversine_distance(const GeoPoint& a, const GeoPoint& b) noexcept;

/// Tangent-plane offset of `p` from `origin`. Throws Error{OutOfRange} when
/// the points are 100 km or more apart.
LocalOffset local_offset(const GeoPoint& origin, const GeoPoint& p);

/// Inverse of local_offset.
GeoPoint offset_to_geo(const LocalOffset& offset, const GeoPoint& origin);

/// Point at fraction `f` of the way from `a` to `b`, linear in the tangent
/// plane at `a` (equivalently, linear in latitude and wrapped longitude).
GeoPoint interpolate(const GeoPoint& a, const GeoPoint& b, double f) noexcept;

/// Signed longitude difference b - a wrapped into [-180, 180).
double lon_delta(double lon_a, double lon_b) noexcept;

/// Ray-casting containment in (lon, lat) space; points on an edge or vertex
/// count as inside. Throws Error{DegeneratePolygon} for fewer than three
/// vertices or zero area. A closing vertex equal to the first is allowed.
bool point_in_footprint(const GeoPoint& p, std::span<const GeoPoint> footprint);

struct BoundingBox {
    double min_lat = 0.0;
    double max_lat = 0.0;
    double min_lon = 0.0;
    double max_lon = 0.0;

    bool contains(const GeoPoint& p) const noexcept;
};

BoundingBox bounding_box(std::span<const GeoPoint> points);

}  // namespace darksts::geo
