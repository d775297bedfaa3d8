#include "darksts/geo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "darksts/error.hpp"

namespace darksts::geo {

double normalize_lon(double lon) noexcept {
    if (lon >= -180.0 && lon < 180.0) {
        return lon;
    }
    double r = std::fmod(lon + 180.0, 360.0);
    if (r < 0.0) {
        r += 360.0;
    }
    return r - 180.0;
}

GeoPoint::GeoPoint(double lat, double lon) {
    if (!std::isfinite(lat) || !std::isfinite(lon) || lat < -90.0 || lat > 90.0) {
        throw Error(Errc::OutOfRange, "invalid coordinate (" + std::to_string(lat) + ", " + std::to_string(lon) + ")");
    }
    lat_ = lat;
    lon_ = normalize_lon(lon);
}

double LocalOffset::norm() const noexcept {
    return std::hypot(east, north);
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) noexcept {
    const double phi1 = a.lat() * kDegToRad;
    const double phi2 = b.lat() * kDegToRad;
    const double s_dphi = std::sin((phi2 - phi1) / 2.0);
    const double s_dlam = std::sin((b.lon() - a.lon()) * kDegToRad / 2.0);
    const double h = s_dphi * s_dphi + std::cos(phi1) * std::cos(phi2) * s_dlam * s_dlam;
    return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double lon_delta(double lon_a, double lon_b) noexcept {
    return normalize_lon(lon_b - lon_a);
}

LocalOffset local_offset(const GeoPoint& origin, const GeoPoint& p) {
    if (haversine_distance(origin, p) >= kMaxLocalOffsetM) {
        throw Error(Errc::OutOfRange, "point too far from tangent-plane origin");
    }
    return LocalOffset{
        lon_delta(origin.lon(), p.lon()) * std::cos(origin.lat() * kDegToRad) * kMetersPerDegree,
        (p.lat() - origin.lat()) * kMetersPerDegree,
    };
}

GeoPoint offset_to_geo(const LocalOffset& offset, const GeoPoint& origin) {
    const double lat = origin.lat() + offset.north / kMetersPerDegree;
    const double lon = origin.lon() + offset.east / (kMetersPerDegree * std::cos(origin.lat() * kDegToRad));
    return GeoPoint(lat, lon);
}

GeoPoint interpolate(const GeoPoint& a, const GeoPoint& b, double f) noexcept {
    return GeoPoint(a.lat() + f * (b.lat() - a.lat()), a.lon() + f * lon_delta(a.lon(), b.lon()));
}

namespace {

bool on_segment(double px, double py, double ax, double ay, double bx, double by) {
    constexpr double kEps = 1e-12;
    const double cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
    if (std::abs(cross) > kEps * std::max({1.0, std::abs(bx - ax), std::abs(by - ay)})) {
        return false;
    }
    return px >= std::min(ax, bx) - kEps && px <= std::max(ax, bx) + kEps && py >= std::min(ay, by) - kEps &&
           py <= std::max(ay, by) + kEps;
}

}  // namespace

bool point_in_footprint(const GeoPoint& p, std::span<const GeoPoint> footprint) {
    std::size_t n = footprint.size();
    if (n >= 2 && footprint.front() == footprint.back()) {
        --n;
    }
    if (n < 3) {
        throw Error(Errc::DegeneratePolygon, "footprint needs at least 3 vertices");
    }
    double twice_area = 0.0;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        twice_area += footprint[j].lon() * footprint[i].lat() - footprint[i].lon() * footprint[j].lat();
    }
    if (twice_area == 0.0) {
        throw Error(Errc::DegeneratePolygon, "footprint has zero area");
    }

    const double px = p.lon();
    const double py = p.lat();
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double xi = footprint[i].lon(), yi = footprint[i].lat();
        const double xj = footprint[j].lon(), yj = footprint[j].lat();
        if (on_segment(px, py, xj, yj, xi, yi)) {
            return true;
        }
        if ((yi > py) != (yj > py)) {
            const double x_cross = xj + (py - yj) * (xi - xj) / (yi - yj);
            if (px < x_cross) {
                inside = !inside;
            }
        }
    }
    return inside;
}

bool BoundingBox::contains(const GeoPoint& p) const noexcept {
    return p.lat() >= min_lat && p.lat() <= max_lat && p.lon() >= min_lon && p.lon() <= max_lon;
}

BoundingBox bounding_box(std::span<const GeoPoint> points) {
    BoundingBox box{90.0, -90.0, 180.0, -180.0};
    for (const auto& p : points) {
        box.min_lat = std::min(box.min_lat, p.lat());
        box.max_lat = std::max(box.max_lat, p.lat());
        box.min_lon = std::min(box.min_lon, p.lon());
        box.max_lon = std::max(box.max_lon, p.lon());
    }
    return box;
}

}  // namespace darksts::geo
