#include "darksts/scene.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::scene {

void SceneMeta::validate() const {
    if (scene_id.empty()) {
        throw Error(Errc::ConfigInvalid, "scene without id");
    }
    if (!(resolution_m > 0.0) || !(cloud_score >= 0.0 && cloud_score <= 1.0) || width <= 0 || height <= 0) {
        throw Error(Errc::ConfigInvalid, "scene " + scene_id + ": invalid resolution, cloud score or size");
    }
    (void)geo::point_in_footprint(origin, footprint);  // throws DegeneratePolygon
}

namespace {

PixelPoint project(const SceneMeta& scene, const geo::GeoPoint& p) {
    const auto off = geo::local_offset(scene.origin, p);
    return {off.east / scene.resolution_m, -off.north / scene.resolution_m};
}

}  // namespace

PixelPoint geo_to_pixel(const SceneMeta& scene, const geo::GeoPoint& p) {
    if (!geo::bounding_box(scene.footprint).contains(p)) {
        throw Error(Errc::OutOfScene, "point outside scene " + scene.scene_id);
    }
    try {
        return project(scene, p);
    } catch (const Error&) {
        throw Error(Errc::OutOfScene, "point too far from origin of scene " + scene.scene_id);
    }
}

geo::GeoPoint pixel_to_geo(const SceneMeta& scene, PixelPoint px) {
    if (!(px.x >= 0.0 && px.y >= 0.0 && px.x <= static_cast<double>(scene.width) &&
          px.y <= static_cast<double>(scene.height))) {
        throw Error(Errc::OutOfScene, "pixel outside scene " + scene.scene_id);
    }
    return geo::offset_to_geo({px.x * scene.resolution_m, -px.y * scene.resolution_m}, scene.origin);
}

std::vector<FixMatch> match_fixes_to_scene(const SceneMeta& scene, std::span<const ais::Track> tracks,
                                           Seconds max_time_delta) {
    std::vector<FixMatch> out;
    for (const auto& track : tracks) {
        const auto& fixes = track.fixes;
        if (fixes.empty()) {
            continue;
        }
        const auto it = std::lower_bound(fixes.begin(), fixes.end(), scene.acquired_at,
                                         [](const ais::PositionFix& f, Timestamp t) { return f.t < t; });
        const ais::PositionFix* best = nullptr;
        if (it != fixes.end()) {
            best = &*it;
        }
        if (it != fixes.begin()) {
            const auto& before = *std::prev(it);
            // ties resolve to the earlier fix
            if (!best || scene.acquired_at - before.t <= best->t - scene.acquired_at) {
                best = &before;
            }
        }
        const Seconds delta = best->t - scene.acquired_at;
        if (std::chrono::abs(delta) > max_time_delta) {
            continue;
        }
        if (!geo::point_in_footprint(best->pos, scene.footprint)) {
            continue;
        }
        out.push_back({track.vessel.vessel_id, classify::classify_vessel(track.vessel), *best, delta});
    }
    return out;
}

std::int64_t tile_pixels(double extent_m, double resolution_m) {
    return static_cast<std::int64_t>(std::ceil(extent_m / resolution_m - 1e-9));
}

namespace {

std::pair<std::int64_t, std::int64_t> place(double center, std::int64_t size, std::int64_t limit) {
    if (size >= limit) {
        return {0, limit};
    }
    const auto start = std::llround(center - static_cast<double>(size) / 2.0);
    return {std::clamp<std::int64_t>(start, 0, limit - size), size};
}

PixelWindow window_around(const SceneMeta& scene, const geo::GeoPoint& center, double extent_m) {
    const auto px = project(scene, center);
    const auto side = tile_pixels(extent_m, scene.resolution_m);
    const auto [x0, w] = place(px.x, side, scene.width);
    const auto [y0, h] = place(px.y, side, scene.height);
    return {x0, y0, w, h};
}

bool closer(Seconds a, Seconds b) {
    const auto aa = std::chrono::abs(a);
    const auto ab = std::chrono::abs(b);
    return aa < ab || (aa == ab && a < b);
}

}  // namespace

std::vector<TileRecord> make_tiles(const SceneMeta& scene, std::span<const FixMatch> matches,
                                   std::span<const sts::StsEvent> events, double buffer_m) {
    const double extent = 2.0 * buffer_m;
    std::map<std::string_view, const FixMatch*> matched;
    for (const auto& m : matches) {
        matched.emplace(m.vessel_id, &m);
    }

    std::vector<TileRecord> tiles;
    std::map<std::string_view, bool> in_event;
    for (const auto& e : events) {
        if (!e.active_at(scene.acquired_at)) {
            continue;
        }
        const FixMatch* best = nullptr;
        for (const auto* id : {&e.vessel_a, &e.vessel_b}) {
            if (auto it = matched.find(*id); it != matched.end()) {
                in_event[*id] = true;
                if (!best || closer(it->second->delta, best->delta)) {
                    best = it->second;
                }
            }
        }
        if (!best) {
            continue;
        }
        const auto label = classify::label_for(e.sts_class);
        if (!label) {
            continue;
        }
        tiles.push_back({scene.scene_id, e.midpoint, extent, window_around(scene, e.midpoint, extent), *label,
                         {e.vessel_a, e.vessel_b}, best->delta});
    }
    for (const auto& m : matches) {
        if (in_event.count(m.vessel_id)) {
            continue;
        }
        const auto label = classify::label_for(m.ship_class);
        if (!label) {
            continue;
        }
        tiles.push_back({scene.scene_id, m.fix.pos, extent, window_around(scene, m.fix.pos, extent), *label,
                         {m.vessel_id}, m.delta});
    }
    return tiles;
}

std::string format_manifest(std::span<const TileRecord> tiles) {
    std::string out = "scene_id,label,x0,y0,w,h,center_lat,center_lon,vessels,ais_time_delta_s\n";
    for (const auto& t : tiles) {
        std::string vessels;
        for (std::size_t i = 0; i < t.vessels.size(); ++i) {
            if (i) vessels.push_back(';');
            vessels += t.vessels[i];
        }
        csv::append_row(out, {csv::escape(t.scene_id), std::string(classify::to_string(t.label)),
                              std::to_string(t.window.x0), std::to_string(t.window.y0), std::to_string(t.window.w),
                              std::to_string(t.window.h), csv::format_double(t.center.lat()),
                              csv::format_double(t.center.lon()), csv::escape(vessels),
                              std::to_string(t.ais_time_delta.count())});
    }
    return out;
}

std::string format_wkt(std::span<const geo::GeoPoint> ring) {
    std::string out = "POLYGON ((";
    const auto vertex = [&](const geo::GeoPoint& p) {
        out += csv::format_double(p.lon()) + " " + csv::format_double(p.lat());
    };
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (i) out += ", ";
        vertex(ring[i]);
    }
    if (!ring.empty() && !(ring.front() == ring.back())) {
        out += ", ";
        vertex(ring.front());
    }
    out += "))";
    return out;
}

std::vector<geo::GeoPoint> parse_wkt_polygon(std::string_view wkt) {
    wkt = csv::trim(wkt);
    const auto open = wkt.find("((");
    const auto close = wkt.find(')', open == std::string_view::npos ? 0 : open);
    if (wkt.substr(0, 7) != "POLYGON" || open == std::string_view::npos || close == std::string_view::npos) {
        throw Error(Errc::MalformedRow, "not a WKT polygon");
    }
    std::vector<geo::GeoPoint> ring;
    std::string_view body = wkt.substr(open + 2, close - open - 2);
    while (!body.empty()) {
        const auto comma = body.find(',');
        auto pair = csv::trim(body.substr(0, comma));
        const auto space = pair.find(' ');
        if (space == std::string_view::npos) {
            throw Error(Errc::MalformedRow, "bad WKT coordinate");
        }
        const auto lon = csv::parse_double(pair.substr(0, space));
        const auto lat = csv::parse_double(pair.substr(space + 1));
        if (!lon || !lat || *lat < -90.0 || *lat > 90.0) {
            throw Error(Errc::MalformedRow, "bad WKT coordinate");
        }
        ring.emplace_back(*lat, *lon);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (ring.size() >= 2 && ring.front() == ring.back()) {
        ring.pop_back();
    }
    return ring;
}

std::vector<SceneMeta> parse_scenes(std::string_view text) {
    csv::Cursor cur(text);
    std::vector<std::string_view> row;
    if (!cur.next(row)) {
        throw Error(Errc::EmptyFile, "scenes table has no header");
    }
    const csv::Header h(row);
    const auto c_id = h.require("scene_id");
    const auto c_t = h.require("acquired_at");
    const auto c_olat = h.require("origin_lat");
    const auto c_olon = h.require("origin_lon");
    const auto c_w = h.require("width");
    const auto c_h = h.require("height");
    const auto c_res = h.require("resolution");
    const auto c_cloud = h.require("cloud_score");
    const auto c_fp = h.require("footprint_wkt");
    const std::size_t needed = std::max({c_id, c_t, c_olat, c_olon, c_w, c_h, c_res, c_cloud, c_fp});

    std::vector<SceneMeta> scenes;
    while (cur.next(row)) {
        const std::string where = "scenes table line " + std::to_string(cur.line());
        if (row.size() <= needed) {
            throw Error(Errc::MalformedRow, where);
        }
        const auto t = parse_iso8601(csv::trim(row[c_t]));
        const auto olat = csv::parse_double(row[c_olat]);
        const auto olon = csv::parse_double(row[c_olon]);
        const auto w = csv::parse_int(row[c_w]);
        const auto hh = csv::parse_int(row[c_h]);
        const auto res_text = csv::trim(row[c_res]);
        const auto res = res_text.empty() ? std::optional<double>(kDefaultResolutionM) : csv::parse_double(res_text);
        const auto cloud = csv::parse_double(row[c_cloud]);
        if (!t || !olat || !olon || !w || !hh || !res || !cloud || *olat < -90.0 || *olat > 90.0) {
            throw Error(Errc::MalformedRow, where);
        }
        SceneMeta s;
        s.scene_id = std::string(csv::trim(row[c_id]));
        s.acquired_at = *t;
        s.origin = geo::GeoPoint(*olat, *olon);
        s.width = *w;
        s.height = *hh;
        s.resolution_m = *res;
        s.cloud_score = *cloud;
        s.footprint = parse_wkt_polygon(row[c_fp]);
        try {
            s.validate();
        } catch (const Error& e) {
            throw Error(Errc::MalformedRow, where + ": " + e.what());
        }
        scenes.push_back(std::move(s));
    }
    return scenes;
}

std::vector<SceneMeta> load_scenes(const std::filesystem::path& path) {
    return parse_scenes(csv::read_file(path));
}

std::string format_scenes(std::span<const SceneMeta> scenes) {
    std::string out = "scene_id,acquired_at,origin_lat,origin_lon,width,height,resolution,cloud_score,footprint_wkt\n";
    for (const auto& s : scenes) {
        csv::append_row(out, {csv::escape(s.scene_id), format_iso8601(s.acquired_at),
                              csv::format_double(s.origin.lat()), csv::format_double(s.origin.lon()),
                              std::to_string(s.width), std::to_string(s.height), csv::format_double(s.resolution_m),
                              csv::format_double(s.cloud_score), csv::escape(format_wkt(s.footprint))});
    }
    return out;
}

}  // namespace darksts::scene
