#include "darksts/dark.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include <json.hpp>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::dark {

Detection make_detection(const scene::SceneMeta& scene, classify::TileLabel label, BBox bbox, double confidence) {
    const bool inside = bbox.x0 >= 0.0 && bbox.y0 >= 0.0 && bbox.w > 0.0 && bbox.h > 0.0 &&
                        bbox.x0 + bbox.w <= static_cast<double>(scene.width) &&
                        bbox.y0 + bbox.h <= static_cast<double>(scene.height);
    if (!inside) {
        throw Error(Errc::MalformedRow, "bbox outside scene " + scene.scene_id);
    }
    if (!(confidence >= 0.0 && confidence <= 1.0)) {
        throw Error(Errc::MalformedRow, "confidence outside [0, 1]");
    }
    Detection d;
    d.scene_id = scene.scene_id;
    d.class_label = label;
    d.bbox = bbox;
    d.confidence = confidence;
    d.geo_center = scene::pixel_to_geo(scene, {bbox.x0 + bbox.w / 2.0, bbox.y0 + bbox.h / 2.0});
    d.acquired_at = scene.acquired_at;
    return d;
}

std::vector<Detection> parse_detections(std::string_view text, std::span<const scene::SceneMeta> scenes) {
    csv::Cursor cur(text);
    std::vector<std::string_view> row;
    if (!cur.next(row)) {
        throw Error(Errc::EmptyFile, "detections table has no header");
    }
    const csv::Header h(row);
    const auto c_scene = h.require("scene_id");
    const auto c_label = h.require("class_label");
    const auto c_x0 = h.require("x0");
    const auto c_y0 = h.require("y0");
    const auto c_w = h.require("w");
    const auto c_h = h.require("h");
    const auto c_conf = h.require("confidence");
    const std::size_t needed = std::max({c_scene, c_label, c_x0, c_y0, c_w, c_h, c_conf});

    std::map<std::string_view, const scene::SceneMeta*> by_id;
    for (const auto& s : scenes) {
        by_id.emplace(s.scene_id, &s);
    }

    std::vector<Detection> out;
    while (cur.next(row)) {
        const std::string where = "detections table line " + std::to_string(cur.line());
        if (row.size() <= needed) {
            throw Error(Errc::MalformedRow, where);
        }
        const auto id = csv::trim(row[c_scene]);
        const auto it = by_id.find(id);
        if (it == by_id.end()) {
            throw Error(Errc::MissingScene, where + ": unknown scene " + std::string(id));
        }
        const auto label = classify::parse_label(csv::trim(row[c_label]));
        const auto x0 = csv::parse_double(row[c_x0]);
        const auto y0 = csv::parse_double(row[c_y0]);
        const auto w = csv::parse_double(row[c_w]);
        const auto hh = csv::parse_double(row[c_h]);
        const auto conf = csv::parse_double(row[c_conf]);
        if (!label || !x0 || !y0 || !w || !hh || !conf) {
            throw Error(Errc::MalformedRow, where);
        }
        try {
            out.push_back(make_detection(*it->second, *label, {*x0, *y0, *w, *hh}, *conf));
        } catch (const Error& e) {
            throw Error(Errc::MalformedRow, where + ": " + e.what());
        }
    }
    return out;
}

std::vector<Detection> load_detections(const std::filesystem::path& path, std::span<const scene::SceneMeta> scenes) {
    return parse_detections(csv::read_file(path), scenes);
}

std::string format_detections(std::span<const Detection> detections) {
    std::string out = "scene_id,class_label,x0,y0,w,h,confidence\n";
    for (const auto& d : detections) {
        csv::append_row(out, {csv::escape(d.scene_id), std::string(classify::to_string(d.class_label)),
                              csv::format_double(d.bbox.x0), csv::format_double(d.bbox.y0),
                              csv::format_double(d.bbox.w), csv::format_double(d.bbox.h),
                              csv::format_double(d.confidence)});
    }
    return out;
}

void AuditParams::validate() const {
    if (!(radius_m > 0.0) || window.count() <= 0 || min_identities == 0) {
        throw Error(Errc::ConfigInvalid, "audit parameters must be strictly positive");
    }
}

// ---------------------------------------------------------------------------
// FixIndex

std::size_t FixIndex::KeyHash::operator()(const std::array<std::int64_t, 3>& k) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : k) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

namespace {

double checked_cell(double cell_m) {
    if (!(cell_m > 0.0)) {
        throw Error(Errc::ConfigInvalid, "index cell size must be positive");
    }
    return cell_m;
}

}  // namespace

FixIndex::FixIndex(std::span<const ais::Track> tracks, double cell_m, Seconds bucket)
    : tracks_(tracks),
      cell_deg_(checked_cell(cell_m) / geo::kMetersPerDegree),
      columns_(static_cast<std::int64_t>(std::ceil(360.0 / cell_deg_))),
      bucket_s_(std::max<std::int64_t>(1, bucket.count())) {
    for (std::uint32_t ti = 0; ti < tracks.size(); ++ti) {
        const auto& fixes = tracks[ti].fixes;
        for (std::uint32_t fi = 0; fi < fixes.size(); ++fi) {
            const auto& f = fixes[fi];
            const std::int64_t t = to_unix(f.t);
            const std::int64_t b = t / bucket_s_ - ((t % bucket_s_ != 0) && (t < 0));
            cells_[{b, row_of(f.pos.lat()), col_of(f.pos.lon())}].push_back({ti, fi});
        }
    }
}

std::int64_t FixIndex::row_of(double lat) const {
    return static_cast<std::int64_t>(std::floor((lat + 90.0) / cell_deg_));
}

std::int64_t FixIndex::col_of(double lon) const {
    const auto c = static_cast<std::int64_t>(std::floor((geo::normalize_lon(lon) + 180.0) / cell_deg_));
    return std::clamp<std::int64_t>(c, 0, columns_ - 1);
}

std::vector<std::int64_t> FixIndex::columns_around(const geo::GeoPoint& center, double radius_m) const {
    std::vector<std::int64_t> cols;
    const double dlat = radius_m / geo::kMetersPerDegree;
    const double max_lat = std::min(90.0, std::abs(center.lat()) + dlat);
    const double dlon =
        max_lat >= 89.5 ? 360.0 : radius_m / (geo::kMetersPerDegree * std::cos(max_lat * geo::kDegToRad)) * 1.01;
    if (2.0 * dlon >= 360.0) {
        cols.resize(static_cast<std::size_t>(columns_));
        for (std::int64_t c = 0; c < columns_; ++c) cols[static_cast<std::size_t>(c)] = c;
        return cols;
    }
    const double lo = geo::normalize_lon(center.lon() - dlon);
    const double hi = lo + 2.0 * dlon;
    if (hi < 180.0) {
        for (auto c = col_of(lo); c <= col_of(hi); ++c) cols.push_back(c);
    } else {
        for (auto c = col_of(lo); c < columns_; ++c) cols.push_back(c);
        for (std::int64_t c = 0; c <= col_of(hi - 360.0); ++c) cols.push_back(c);
    }
    return cols;
}

// ---------------------------------------------------------------------------
// audit

DarkVerdict audit_detection(const Detection& d, const FixIndex& index, const AuditParams& params) {
    if (!classify::is_sts_label(d.class_label)) {
        throw Error(Errc::NotAnStsDetection,
                    "detection of class " + std::string(classify::to_string(d.class_label)) + " is not an STS");
    }
    std::set<std::uint32_t> found;
    index.query(d.geo_center, params.radius_m, d.acquired_at, params.window,
                [&](std::uint32_t track, const ais::PositionFix&) { found.insert(track); });

    DarkVerdict v;
    v.detection = d;
    v.window_start = d.acquired_at - params.window;
    v.window_end = d.acquired_at + params.window;
    const auto tracks = index.tracks();
    for (const auto ti : found) {
        v.distinct_identities.push_back(tracks[ti].vessel.vessel_id);
    }
    std::sort(v.distinct_identities.begin(), v.distinct_identities.end());
    v.distinct_identities.erase(std::unique(v.distinct_identities.begin(), v.distinct_identities.end()),
                                v.distinct_identities.end());
    v.is_dark = v.distinct_identities.size() < params.min_identities;

    std::vector<std::uint32_t> order(found.begin(), found.end());
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return tracks[a].vessel.vessel_id < tracks[b].vessel.vessel_id;
    });
    for (const auto ti : order) {
        const auto& fixes = tracks[ti].fixes;
        const auto first = std::lower_bound(fixes.begin(), fixes.end(), v.window_start,
                                            [](const ais::PositionFix& f, Timestamp t) { return f.t < t; });
        const auto past_last = std::upper_bound(fixes.begin(), fixes.end(), v.window_end,
                                                [](Timestamp t, const ais::PositionFix& f) { return t < f.t; });
        if (first == fixes.end() || past_last == fixes.begin() || first >= past_last) {
            continue;
        }
        const auto& last = *std::prev(past_last);
        if (first->draught && last.draught) {
            v.draught_deltas.push_back({tracks[ti].vessel.vessel_id, *last.draught - *first->draught});
        }
    }
    return v;
}

DarkVerdict audit_detection(const Detection& d, std::span<const ais::Track> tracks, const AuditParams& params) {
    params.validate();
    const FixIndex index(tracks, params.radius_m, params.window);
    return audit_detection(d, index, params);
}

DarkStsReport scan(std::span<const Detection> detections, std::span<const ais::Track> tracks,
                   const AuditParams& params, unsigned workers) {
    params.validate();
    DarkStsReport report;
    report.params = params;
    report.total_detections = detections.size();

    std::vector<const Detection*> sts;
    for (const auto& d : detections) {
        ++report.class_census[std::string(classify::to_string(d.class_label))];
        if (classify::is_sts_label(d.class_label)) {
            sts.push_back(&d);
        }
    }
    report.sts_detections = sts.size();
    report.verdicts.resize(sts.size());
    if (sts.empty()) {
        return report;
    }

    const FixIndex index(tracks, params.radius_m, params.window);
    const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, sts.size());
    const auto run = [&](std::size_t first, std::size_t last) {
        for (std::size_t i = first; i < last; ++i) {
            report.verdicts[i] = audit_detection(*sts[i], index, params);
        }
    };
    if (n_workers == 1) {
        run(0, sts.size());
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back(run, sts.size() * w / n_workers, sts.size() * (w + 1) / n_workers);
        }
    }

    for (const auto& v : report.verdicts) {
        auto& day = report.timeline[format_date(v.detection.acquired_at)];
        ++day.sts;
        if (v.is_dark) {
            ++day.dark;
            ++report.dark_count;
            for (const auto& id : v.distinct_identities) {
                ++report.dark_participation[id];
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// reports

namespace {

using Json = nlohmann::ordered_json;

Json header_json(const DarkStsReport& report, const sts::ConfigEcho& config) {
    Json cfg = Json::object();
    for (const auto& [k, v] : config) {
        cfg[k] = v;
    }
    const auto hours = std::chrono::duration_cast<std::chrono::duration<double, std::ratio<3600>>>(report.params.window);
    Json h;
    h["radius_m"] = report.params.radius_m;
    h["window_hours"] = hours.count();
    h["min_identities"] = report.params.min_identities;
    h["window_overridden"] = report.params.window != kDefaultWindow;
    h["window_note"] = report.params.window == kDefaultWindow
                           ? "default +/-12 h search window; a +/-24 h reading of the same rule is available as "
                             "--window-hours 24"
                           : "search window overridden to +/-" + csv::format_double(hours.count()) +
                                 " h (default +/-12 h)";
    h["config"] = cfg;
    return h;
}

Json summary_json(const DarkStsReport& report) {
    Json s;
    s["total_detections"] = report.total_detections;
    s["sts_detections"] = report.sts_detections;
    s["dark_count"] = report.dark_count;
    Json census = Json::object();
    for (const auto& [k, v] : report.class_census) census[k] = v;
    s["class_census"] = census;
    Json part = Json::array();
    for (const auto& [k, v] : report.dark_participation) part.push_back({{"vessel_id", k}, {"dark_sts", v}});
    s["dark_participation"] = part;
    Json timeline = Json::array();
    for (const auto& [day, c] : report.timeline) {
        timeline.push_back({{"date", day}, {"sts", c.sts}, {"dark", c.dark}});
    }
    s["timeline"] = timeline;
    return s;
}

}  // namespace

std::string format_report_geojson(const DarkStsReport& report, const sts::ConfigEcho& config) {
    Json doc;
    doc["type"] = "FeatureCollection";
    doc["header"] = header_json(report, config);
    doc["summary"] = summary_json(report);
    Json features = Json::array();
    for (const auto& v : report.verdicts) {
        const auto& d = v.detection;
        Json deltas = Json::array();
        for (const auto& dd : v.draught_deltas) {
            deltas.push_back({{"vessel_id", dd.vessel_id}, {"delta_m", dd.delta_m}});
        }
        Json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"}, {"coordinates", {d.geo_center.lon(), d.geo_center.lat()}}};
        f["properties"] = {
            {"scene_id", d.scene_id},
            {"class", std::string(classify::to_string(d.class_label))},
            {"confidence", d.confidence},
            {"bbox", {d.bbox.x0, d.bbox.y0, d.bbox.w, d.bbox.h}},
            {"acquired_at", format_iso8601(d.acquired_at)},
            {"is_dark", v.is_dark},
            {"identities", v.distinct_identities},
            {"draught_deltas", deltas},
            {"evidence_window", {format_iso8601(v.window_start), format_iso8601(v.window_end)}},
        };
        features.push_back(std::move(f));
    }
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

std::string format_summary_json(const DarkStsReport& report, const sts::ConfigEcho& config) {
    Json doc;
    doc["header"] = header_json(report, config);
    doc["summary"] = summary_json(report);
    return doc.dump(2) + "\n";
}

}  // namespace darksts::dark
