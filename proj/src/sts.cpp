#include "darksts/sts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::sts {

void StsParams::validate() const {
    if (!(max_distance_m > 0.0) || min_duration.count() <= 0 || !(max_sog_kn > 0.0) || resample_step.count() <= 0 ||
        max_gap.count() <= 0) {
        throw Error(Errc::ConfigInvalid, "STS parameters must be strictly positive");
    }
    if (resample_step > min_duration) {
        throw Error(Errc::ConfigInvalid, "resample_step must not exceed min_duration");
    }
    if (max_gap >= min_duration) {
        throw Error(Errc::ConfigInvalid, "max_gap must be shorter than min_duration");
    }
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return -floor_div(-a, b);
}

}  // namespace

std::vector<GridFix> resample_track(const ais::Track& track, Seconds step, Seconds max_gap) {
    std::vector<GridFix> out;
    const auto& fixes = track.fixes;
    if (fixes.size() < 2 || step.count() <= 0) {
        return out;
    }
    const std::int64_t s = step.count();
    for (std::size_t i = 0; i + 1 < fixes.size(); ++i) {
        const auto& a = fixes[i];
        const auto& b = fixes[i + 1];
        const std::int64_t ta = to_unix(a.t);
        const std::int64_t tb = to_unix(b.t);
        if (tb - ta > max_gap.count()) {
            continue;
        }
        std::int64_t k = ceil_div(ta, s);
        if (!out.empty() && out.back().slot >= k) {
            k = out.back().slot + 1;
        }
        const std::int64_t k_last = floor_div(tb, s);
        for (; k <= k_last; ++k) {
            const std::int64_t t = k * s;
            if (t == ta) {
                out.push_back({k, a.pos, a.sog});
            } else if (t == tb) {
                out.push_back({k, b.pos, b.sog});
            } else {
                const double f = static_cast<double>(t - ta) / static_cast<double>(tb - ta);
                out.push_back({k, geo::interpolate(a.pos, b.pos, f), a.sog + f * (b.sog - a.sog)});
            }
        }
    }
    return out;
}

void sort_events(std::vector<StsEvent>& events) {
    std::sort(events.begin(), events.end(), [](const StsEvent& x, const StsEvent& y) {
        return std::tie(x.vessel_a, x.vessel_b, x.start) < std::tie(y.vessel_a, y.vessel_b, y.start);
    });
}

namespace {

struct Sample {
    std::uint32_t a = 0;  // canonical (vessel_id) rank, a < b
    std::uint32_t b = 0;
    std::int64_t slot = 0;
    double separation = 0.0;
    geo::GeoPoint midpoint;
};

struct SlicePoint {
    std::int64_t slot;
    std::uint32_t rank;
    const GridFix* fix;
};

// Uniform grid over one time slice. Cells are at least max_distance wide in
// both directions (longitude width sized at the slice's highest latitude),
// so any qualifying pair lies in the same or an adjacent cell; columns wrap
// around the antimeridian.
class SliceGrid {
public:
    explicit SliceGrid(double cell_m) : cell_m_(cell_m * (1.0 + 1e-3)) {}

    void build(std::span<const SlicePoint> pts) {
        double max_abs_lat = 0.0;
        for (const auto& p : pts) {
            max_abs_lat = std::max(max_abs_lat, std::abs(p.fix->pos.lat()));
        }
        lat_cell_deg_ = cell_m_ / geo::kMetersPerDegree;
        const double ring_m = 360.0 * geo::kMetersPerDegree * std::cos(max_abs_lat * geo::kDegToRad);
        columns_ = max_abs_lat > 89.0 ? 1 : std::max<std::int64_t>(1, static_cast<std::int64_t>(ring_m / cell_m_));
        lon_cell_deg_ = 360.0 / static_cast<double>(columns_);

        keyed_.clear();
        keyed_.reserve(pts.size());
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            keyed_.push_back({key_of(pts[i].fix->pos), i});
        }
        std::sort(keyed_.begin(), keyed_.end());
        cells_.clear();
        for (std::uint32_t i = 0; i < keyed_.size(); ++i) {
            if (i == 0 || keyed_[i].first != keyed_[i - 1].first) {
                cells_.push_back({keyed_[i].first, i});
            }
        }
        cells_.push_back({std::numeric_limits<std::uint64_t>::max(), static_cast<std::uint32_t>(keyed_.size())});
    }

    // Calls fn(i, j) once for every unordered candidate pair (i < j as
    // indices into the span passed to build) in the same or adjacent cells.
    // Each cell is paired with itself, its east neighbour and the three
    // cells of the row above, so no pair of cells is visited twice.
    template <typename Fn>
    void for_each_candidate(Fn&& fn) const {
        const auto emit = [&](std::uint32_t x, std::uint32_t y) { x < y ? fn(x, y) : fn(y, x); };
        const auto cross = [&](std::size_t c, std::size_t d) {
            for (std::uint32_t i = cells_[c].first; i < cells_[c + 1].first; ++i) {
                for (std::uint32_t j = cells_[d].first; j < cells_[d + 1].first; ++j) {
                    emit(keyed_[i].second, keyed_[j].second);
                }
            }
        };
        const auto find = [&](std::size_t from, std::uint64_t key) -> std::size_t {
            const auto it = std::lower_bound(cells_.begin() + static_cast<std::ptrdiff_t>(from), cells_.end() - 1, key,
                                             [](const Cell& cell, std::uint64_t k) { return cell.key < k; });
            return static_cast<std::size_t>(it - cells_.begin());
        };
        const std::size_t n_cells = cells_.size() - 1;
        for (std::size_t c = 0; c < n_cells; ++c) {
            const std::uint64_t key = cells_[c].key;
            const std::int64_t row = static_cast<std::int64_t>(key >> 32);
            const std::int64_t col = static_cast<std::int64_t>(key & 0xffffffffu);
            for (std::uint32_t i = cells_[c].first; i < cells_[c + 1].first; ++i) {
                for (std::uint32_t j = i + 1; j < cells_[c + 1].first; ++j) {
                    emit(keyed_[i].second, keyed_[j].second);
                }
            }
            if (columns_ >= 3 || (columns_ == 2 && col == 0)) {
                const std::uint64_t east = pack(row, (col + 1) % columns_);
                const std::size_t d = east > key ? (c + 1 < n_cells && cells_[c + 1].key == east ? c + 1 : n_cells)
                                                 : find(0, east);
                if (d < n_cells && cells_[d].key == east) cross(c, d);
            }
            if (columns_ >= 3 && col >= 1 && col + 1 < columns_) {
                // the three cells above are contiguous in key order
                const std::uint64_t lo = pack(row + 1, col - 1), hi = pack(row + 1, col + 1);
                for (std::size_t d = find(c + 1, lo); d < n_cells && cells_[d].key <= hi; ++d) cross(c, d);
            } else {
                std::int64_t seen[3];
                int n = 0;
                for (std::int64_t dx = -1; dx <= 1; ++dx) {
                    const std::int64_t nc = ((col + dx) % columns_ + columns_) % columns_;
                    if (std::find(seen, seen + n, nc) != seen + n) continue;
                    seen[n++] = nc;
                    const std::uint64_t up = pack(row + 1, nc);
                    const std::size_t d = find(c + 1, up);
                    if (d < n_cells && cells_[d].key == up) cross(c, d);
                }
            }
        }
    }

private:
    struct Cell {
        std::uint64_t key;
        std::uint32_t first;  // into keyed_
    };

    static std::uint64_t pack(std::int64_t row, std::int64_t col) {
        return static_cast<std::uint64_t>(row) << 32 | static_cast<std::uint64_t>(col);
    }

    // both arguments of the casts are non-negative, so truncation is floor
    std::uint64_t key_of(const geo::GeoPoint& p) const {
        const auto row = static_cast<std::int64_t>((p.lat() + 90.0) / lat_cell_deg_);
        auto col = static_cast<std::int64_t>((p.lon() + 180.0) / lon_cell_deg_);
        col = std::clamp<std::int64_t>(col, 0, columns_ - 1);
        return pack(row, col);
    }

    double cell_m_;
    double lat_cell_deg_ = 1.0;
    double lon_cell_deg_ = 1.0;
    std::int64_t columns_ = 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed_;
    std::vector<Cell> cells_;
};

struct Prepared {
    std::vector<std::uint32_t> by_rank;  // rank -> index into tracks
    std::vector<std::vector<GridFix>> grids;  // indexed by rank
};

Prepared prepare(std::span<const ais::Track> tracks, const StsParams& params) {
    Prepared p;
    p.by_rank.resize(tracks.size());
    std::iota(p.by_rank.begin(), p.by_rank.end(), 0u);
    std::stable_sort(p.by_rank.begin(), p.by_rank.end(), [&](std::uint32_t x, std::uint32_t y) {
        return tracks[x].vessel.vessel_id < tracks[y].vessel.vessel_id;
    });
    p.grids.reserve(tracks.size());
    for (auto idx : p.by_rank) {
        p.grids.push_back(resample_track(tracks[idx], params.resample_step, params.max_gap));
    }
    return p;
}

// Mean of a run of midpoints, averaging longitudes as wrapped offsets from the first.
geo::GeoPoint mean_point(std::span<const Sample> run) {
    const double lon0 = run.front().midpoint.lon();
    double lat_sum = 0.0;
    double dlon_sum = 0.0;
    for (const auto& s : run) {
        lat_sum += s.midpoint.lat();
        dlon_sum += geo::lon_delta(lon0, s.midpoint.lon());
    }
    const double n = static_cast<double>(run.size());
    return geo::GeoPoint(lat_sum / n, lon0 + dlon_sum / n);
}

// `samples` must be grouped by pair and slot-ascending within a pair.
std::vector<StsEvent> events_from_samples(std::span<const Sample> samples, std::span<const ais::Track> tracks,
                                          const Prepared& prep, const StsParams& params) {
    std::vector<StsEvent> events;
    const std::int64_t step = params.resample_step.count();
    std::size_t i = 0;
    while (i < samples.size()) {
        std::size_t j = i + 1;
        while (j < samples.size() && samples[j].a == samples[i].a && samples[j].b == samples[i].b &&
               (samples[j].slot - samples[j - 1].slot) * step <= params.max_gap.count()) {
            ++j;
        }
        const auto run = samples.subspan(i, j - i);
        const std::int64_t duration = (run.back().slot - run.front().slot) * step;
        if (duration >= params.min_duration.count()) {
            const auto& va = tracks[prep.by_rank[run.front().a]].vessel;
            const auto& vb = tracks[prep.by_rank[run.front().b]].vessel;
            double sep = 0.0;
            for (const auto& s : run) {
                sep += s.separation;
            }
            StsEvent ev;
            ev.vessel_a = va.vessel_id;
            ev.vessel_b = vb.vessel_id;
            ev.start = from_unix(run.front().slot * step);
            ev.end = from_unix(run.back().slot * step);
            ev.midpoint = mean_point(run);
            ev.sts_class = classify::classify_sts(classify::classify_vessel(va), classify::classify_vessel(vb));
            ev.mean_separation_m = sep / static_cast<double>(run.size());
            events.push_back(std::move(ev));
        }
        i = j;
    }
    return events;
}

void scan_slices(std::span<const SlicePoint> points, std::span<const std::size_t> slice_starts, std::size_t first,
                 std::size_t last, const StsParams& params, std::vector<Sample>& out) {
    SliceGrid grid(params.max_distance_m);
    for (std::size_t s = first; s < last; ++s) {
        const auto slice = points.subspan(slice_starts[s], slice_starts[s + 1] - slice_starts[s]);
        if (slice.size() < 2) {
            continue;
        }
        grid.build(slice);
        // slices are rank-ordered, so i < j means lo.rank < hi.rank
        grid.for_each_candidate([&](std::uint32_t i, std::uint32_t j) {
            const auto& lo = slice[i];
            const auto& hi = slice[j];
            const double d = geo::haversine_distance(lo.fix->pos, hi.fix->pos);
            if (d <= params.max_distance_m) {
                out.push_back({lo.rank, hi.rank, lo.slot, d, geo::interpolate(lo.fix->pos, hi.fix->pos, 0.5)});
            }
        });
    }
}

}  // namespace

std::vector<StsEvent> detect_sts(std::span<const ais::Track> tracks, const StsParams& params, unsigned workers) {
    params.validate();
    const Prepared prep = prepare(tracks, params);

    // counting sort by slot; points go in rank order, so each slice ends up rank-ordered
    std::int64_t lo_slot = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi_slot = std::numeric_limits<std::int64_t>::min();
    for (const auto& g : prep.grids) {
        for (const auto& gf : g) {
            if (gf.sog < params.max_sog_kn) {
                lo_slot = std::min(lo_slot, gf.slot);
                hi_slot = std::max(hi_slot, gf.slot);
            }
        }
    }
    std::vector<SlicePoint> points;
    std::vector<std::size_t> slice_starts;
    if (lo_slot <= hi_slot) {
        std::vector<std::size_t> offset(static_cast<std::size_t>(hi_slot - lo_slot) + 2, 0);
        for (const auto& g : prep.grids) {
            for (const auto& gf : g) {
                if (gf.sog < params.max_sog_kn) ++offset[static_cast<std::size_t>(gf.slot - lo_slot) + 1];
            }
        }
        for (std::size_t k = 1; k < offset.size(); ++k) {
            if (offset[k] > 0) slice_starts.push_back(offset[k - 1]);
            offset[k] += offset[k - 1];
        }
        points.resize(offset.back());
        for (std::uint32_t r = 0; r < prep.grids.size(); ++r) {
            for (const auto& gf : prep.grids[r]) {
                if (gf.sog < params.max_sog_kn) {
                    points[offset[static_cast<std::size_t>(gf.slot - lo_slot)]++] = {gf.slot, r, &gf};
                }
            }
        }
    }
    const std::size_t n_slices = slice_starts.size();
    slice_starts.push_back(points.size());

    const std::size_t n_workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, n_slices));
    std::vector<std::vector<Sample>> partial(n_workers);
    if (n_workers == 1) {
        scan_slices(points, slice_starts, 0, n_slices, params, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_workers; ++w) {
            const std::size_t first = n_slices * w / n_workers;
            const std::size_t last = n_slices * (w + 1) / n_workers;
            pool.emplace_back([&, w, first, last] { scan_slices(points, slice_starts, first, last, params, partial[w]); });
        }
    }

    std::vector<Sample> samples;
    for (auto& part : partial) {
        samples.insert(samples.end(), part.begin(), part.end());
    }
    // slot order is preserved within each pair
    std::stable_sort(samples.begin(), samples.end(),
                     [](const Sample& x, const Sample& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });

    auto events = events_from_samples(samples, tracks, prep, params);
    sort_events(events);
    return events;
}

std::vector<StsEvent> brute_force_sts(std::span<const ais::Track> tracks, const StsParams& params) {
    params.validate();
    const Prepared prep = prepare(tracks, params);
    std::vector<Sample> samples;
    const std::size_t n = prep.grids.size();
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = a + 1; b < n; ++b) {
            const auto& ga = prep.grids[a];
            const auto& gb = prep.grids[b];
            std::size_t i = 0, j = 0;
            while (i < ga.size() && j < gb.size()) {
                if (ga[i].slot < gb[j].slot) {
                    ++i;
                } else if (gb[j].slot < ga[i].slot) {
                    ++j;
                } else {
                    if (ga[i].sog < params.max_sog_kn && gb[j].sog < params.max_sog_kn) {
                        const double d = geo::haversine_distance(ga[i].pos, gb[j].pos);
                        if (d <= params.max_distance_m) {
                            samples.push_back({a, b, ga[i].slot, d, geo::interpolate(ga[i].pos, gb[j].pos, 0.5)});
                        }
                    }
                    ++i;
                    ++j;
                }
            }
        }
    }
    auto events = events_from_samples(samples, tracks, prep, params);
    sort_events(events);
    return events;
}

std::string format_events_csv(std::span<const StsEvent> events) {
    std::string out = "vessel_a,vessel_b,start,end,duration_s,sts_class,midpoint_lat,midpoint_lon,mean_separation_m\n";
    for (const auto& e : events) {
        csv::append_row(out, {csv::escape(e.vessel_a), csv::escape(e.vessel_b), format_iso8601(e.start),
                              format_iso8601(e.end), std::to_string(e.duration().count()),
                              std::string(classify::to_string(e.sts_class)), csv::format_double(e.midpoint.lat()),
                              csv::format_double(e.midpoint.lon()), csv::format_double(e.mean_separation_m)});
    }
    return out;
}

std::vector<StsEvent> parse_events_csv(std::string_view text) {
    csv::Cursor cur(text);
    std::vector<std::string_view> row;
    if (!cur.next(row)) {
        throw Error(Errc::EmptyFile, "events table has no header");
    }
    const csv::Header h(row);
    const auto c_a = h.require("vessel_a");
    const auto c_b = h.require("vessel_b");
    const auto c_start = h.require("start");
    const auto c_end = h.require("end");
    const auto c_class = h.require("sts_class");
    const auto c_lat = h.require("midpoint_lat");
    const auto c_lon = h.require("midpoint_lon");
    const auto c_sep = h.require("mean_separation_m");
    const std::size_t needed = std::max({c_a, c_b, c_start, c_end, c_class, c_lat, c_lon, c_sep});

    std::vector<StsEvent> events;
    while (cur.next(row)) {
        const auto bad = [&] {
            return Error(Errc::MalformedRow, "events table line " + std::to_string(cur.line()));
        };
        if (row.size() <= needed) {
            throw bad();
        }
        const auto start = parse_iso8601(csv::trim(row[c_start]));
        const auto end = parse_iso8601(csv::trim(row[c_end]));
        const auto cls = classify::parse_sts_class(csv::trim(row[c_class]));
        const auto lat = csv::parse_double(row[c_lat]);
        const auto lon = csv::parse_double(row[c_lon]);
        const auto sep = csv::parse_double(row[c_sep]);
        if (!start || !end || !cls || !lat || !lon || !sep || *lat < -90.0 || *lat > 90.0) {
            throw bad();
        }
        StsEvent e;
        e.vessel_a = std::string(csv::trim(row[c_a]));
        e.vessel_b = std::string(csv::trim(row[c_b]));
        e.start = *start;
        e.end = *end;
        e.sts_class = *cls;
        e.midpoint = geo::GeoPoint(*lat, *lon);
        e.mean_separation_m = *sep;
        events.push_back(std::move(e));
    }
    return events;
}

std::string format_events_geojson(std::span<const StsEvent> events, const ConfigEcho& config) {
    nlohmann::ordered_json doc;
    doc["type"] = "FeatureCollection";
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) {
        cfg[k] = v;
    }
    doc["config"] = cfg;
    auto features = nlohmann::ordered_json::array();
    for (const auto& e : events) {
        nlohmann::ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Point"}, {"coordinates", {e.midpoint.lon(), e.midpoint.lat()}}};
        f["properties"] = {
            {"vessels", {e.vessel_a, e.vessel_b}},
            {"start", format_iso8601(e.start)},
            {"end", format_iso8601(e.end)},
            {"duration_s", e.duration().count()},
            {"class", std::string(classify::to_string(e.sts_class))},
            {"mean_separation_m", e.mean_separation_m},
        };
        features.push_back(std::move(f));
    }
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

}  // namespace darksts::sts
