// Independent reference computations used by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "darksts/ais.hpp"
#include "darksts/geo.hpp"
#include "darksts/sts.hpp"
#include "darksts/synth.hpp"
#include "darksts/time.hpp"

namespace testsupport {

// Great-circle distance through the chord between unit vectors.
inline double chord_distance(const darksts::geo::GeoPoint& a, const darksts::geo::GeoPoint& b) {
    const double d = darksts::geo::kDegToRad;
    const auto unit = [d](const darksts::geo::GeoPoint& p) {
        const double la = p.lat() * d, lo = p.lon() * d;
        return std::array<double, 3>{std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
    };
    const auto u = unit(a), v = unit(b);
    const double c = std::sqrt((u[0] - v[0]) * (u[0] - v[0]) + (u[1] - v[1]) * (u[1] - v[1]) +
                               (u[2] - v[2]) * (u[2] - v[2]));
    return 2.0 * darksts::geo::kEarthRadiusM * std::asin(std::min(1.0, c / 2.0));
}

// Vessels wandering inside a small box, switching between loitering and
// moving, with irregular reporting and occasional long gaps. Close encounters
// near every threshold are common.
inline std::vector<darksts::ais::Track> random_tracks(std::uint64_t seed, std::size_t vessels, double hours,
                                                      double box_m = 3'000.0) {
    using namespace darksts;
    synth::Rng rng(seed);
    const geo::GeoPoint center(45.25, 36.5);
    std::vector<ais::PositionFix> fixes;
    std::vector<ais::VesselRecord> registry;
    const double horizon = hours * 3600.0;
    for (std::size_t v = 0; v < vessels; ++v) {
        char id[32];
        std::snprintf(id, sizeof id, "V%04zu", v);
        ais::VesselRecord rec;
        rec.vessel_id = id;
        rec.length = 120;
        rec.beam = 20;
        rec.dwt = rng.uniform() < 0.5 ? 4'000 : 150'000;
        rec.cargo_family = rng.uniform() < 0.5 ? ais::CargoFamily::Dry : ais::CargoFamily::Liquid;
        registry.push_back(rec);

        double e = rng.uniform(-box_m / 2, box_m / 2), n = rng.uniform(-box_m / 2, box_m / 2);
        double t = rng.uniform(0.0, 600.0);
        bool loiter = rng.uniform() < 0.6;
        while (t < horizon) {
            const double sog = loiter ? rng.uniform(0.0, 1.3) : rng.uniform(1.5, 8.0);
            fixes.push_back({rec.vessel_id, from_unix(1'677'628'800 + static_cast<std::int64_t>(t)),
                             geo::offset_to_geo({e, n}, center), std::round(sog * 100.0) / 100.0, std::nullopt});
            double dt = rng.uniform(30.0, 900.0);
            if (rng.uniform() < 0.03) dt = rng.uniform(1'500.0, 4'000.0);
            const double speed = loiter ? sog * 0.2 : sog;  // loiterers mostly swing at anchor
            const double heading = rng.uniform(0.0, 2.0 * 3.141592653589793);
            e = std::clamp(e + std::cos(heading) * speed * 0.514444 * std::min(dt, 600.0), -box_m, box_m);
            n = std::clamp(n + std::sin(heading) * speed * 0.514444 * std::min(dt, 600.0), -box_m, box_m);
            if (rng.uniform() < 0.08) loiter = !loiter;
            t += std::round(dt);
        }
    }
    return ais::build_tracks(fixes, registry);
}

// Distinct vessels with a fix inside (radius, window) of a point, by a plain
// scan over every fix.
inline std::vector<std::string> identities_by_scan(const std::vector<darksts::ais::Track>& tracks,
                                                   const darksts::geo::GeoPoint& center, darksts::Timestamp at,
                                                   double radius_m, darksts::Seconds window) {
    std::set<std::string> ids;
    for (const auto& t : tracks) {
        for (const auto& f : t.fixes) {
            const auto dt = f.t - at;
            if (dt >= -window && dt <= window && chord_distance(f.pos, center) <= radius_m) {
                ids.insert(t.vessel.vessel_id);
            }
        }
    }
    return {ids.begin(), ids.end()};
}

// A point (nearly) due north of `near` whose haversine distance from it is
// exactly `d` in double precision. With equal longitudes the distance only
// depends on the latitude difference, whose ulp is far coarser than the ulp
// of d, so the partner gets a tiny eastward nudge that varies the distance
// below one latitude step.
struct ExactPair {
    darksts::geo::GeoPoint a;
    darksts::geo::GeoPoint b;
};

inline ExactPair exact_north(const darksts::geo::GeoPoint& near, double d) {
    using darksts::geo::GeoPoint;
    using darksts::geo::haversine_distance;
    const GeoPoint a = near;
    for (int k = 0; k < 1'000'000; ++k) {
        const double lon = a.lon() + k * 1e-10;
        double lat = a.lat() + d / darksts::geo::kMetersPerDegree;
        for (int it = 0; it < 3; ++it) {
            lat += (d - haversine_distance(a, GeoPoint(lat, lon))) / darksts::geo::kMetersPerDegree;
        }
        double probe = std::nextafter(std::nextafter(lat, -90.0), -90.0);
        for (int step = 0; step < 5; ++step, probe = std::nextafter(probe, 90.0)) {
            if (haversine_distance(a, GeoPoint(probe, lon)) == d) return {a, GeoPoint(probe, lon)};
        }
    }
    throw std::runtime_error("no exact pair found");
}

// Vessel parked at `p` reporting every `every` seconds over [t0, t1].
inline darksts::ais::Track parked(const std::string& id, const darksts::geo::GeoPoint& p, std::int64_t t0,
                                  std::int64_t t1, double sog = 0.0, std::int64_t every = 60,
                                  darksts::ais::CargoFamily family = darksts::ais::CargoFamily::Liquid,
                                  double dwt = 5'000) {
    darksts::ais::Track t;
    t.vessel = {id, std::nullopt, id, 100, 15, dwt, family};
    for (std::int64_t s = t0; s <= t1; s += every) {
        t.fixes.push_back({id, darksts::from_unix(s), p, sog, std::nullopt});
    }
    if (t.fixes.back().t != darksts::from_unix(t1)) {
        t.fixes.push_back({id, darksts::from_unix(t1), p, sog, std::nullopt});
    }
    return t;
}

inline bool same_events(const std::vector<darksts::sts::StsEvent>& a, const std::vector<darksts::sts::StsEvent>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].vessel_a != b[i].vessel_a || a[i].vessel_b != b[i].vessel_b || a[i].start != b[i].start ||
            a[i].end != b[i].end || a[i].sts_class != b[i].sts_class || !(a[i].midpoint == b[i].midpoint) ||
            a[i].mean_separation_m != b[i].mean_separation_m) {
            return false;
        }
    }
    return true;
}

}  // namespace testsupport
