#include "darksts/ais.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::ais {

std::string_view to_string(CargoFamily f) noexcept {
    switch (f) {
        case CargoFamily::Dry: return "Dry";
        case CargoFamily::Liquid: return "Liquid";
        case CargoFamily::Other: return "Other";
    }
    return "Other";
}

std::optional<CargoFamily> parse_cargo_family(std::string_view s) noexcept {
    s = csv::trim(s);
    if (s == "Dry" || s == "dry") return CargoFamily::Dry;
    if (s == "Liquid" || s == "liquid") return CargoFamily::Liquid;
    if (s == "Other" || s == "other") return CargoFamily::Other;
    return std::nullopt;
}

bool is_valid_fix(const PositionFix& f) noexcept {
    if (f.vessel_id.empty() || !(f.sog >= 0.0 && f.sog <= kMaxSogKnots)) {
        return false;
    }
    if (f.draught && !(*f.draught > 0.0 && *f.draught <= kMaxDraughtM)) {
        return false;
    }
    return true;
}

bool valid_imo(std::uint32_t imo) noexcept {
    if (imo < 1'000'000 || imo > 9'999'999) {
        return false;
    }
    unsigned sum = 0;
    std::uint32_t rest = imo / 10;
    for (unsigned weight = 2; weight <= 7; ++weight) {
        sum += (rest % 10) * weight;
        rest /= 10;
    }
    return sum % 10 == imo % 10;
}

std::uint32_t make_imo(std::uint32_t stem) noexcept {
    unsigned sum = 0;
    std::uint32_t rest = stem;
    for (unsigned weight = 2; weight <= 7; ++weight) {
        sum += (rest % 10) * weight;
        rest /= 10;
    }
    return stem * 10 + sum % 10;
}

bool is_valid_record(const VesselRecord& v) noexcept {
    if (v.vessel_id.empty()) return false;
    if (v.imo && !valid_imo(*v.imo)) return false;
    if (!(v.length > 10.0 && v.length <= 500.0)) return false;
    if (!(v.beam > 0.0 && v.beam < v.length)) return false;
    return v.dwt >= 0.0 && std::isfinite(v.dwt);
}

namespace {

std::optional<PositionFix> parse_fix_row(const std::vector<std::string_view>& row, std::size_t c_id, std::size_t c_t,
                                         std::size_t c_lat, std::size_t c_lon, std::size_t c_sog,
                                         std::optional<std::size_t> c_draught) {
    const std::size_t needed = std::max({c_id, c_t, c_lat, c_lon, c_sog, c_draught.value_or(0)});
    if (row.size() <= needed) {
        return std::nullopt;
    }
    const auto id = csv::trim(row[c_id]);
    const auto t = parse_iso8601(csv::trim(row[c_t]));
    const auto lat = csv::parse_double(row[c_lat]);
    const auto lon = csv::parse_double(row[c_lon]);
    const auto sog = csv::parse_double(row[c_sog]);
    if (id.empty() || !t || !lat || !lon || !sog) {
        return std::nullopt;
    }
    if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
        return std::nullopt;
    }
    PositionFix fix{std::string(id), *t, geo::GeoPoint(*lat, *lon), *sog, std::nullopt};
    if (c_draught) {
        const auto raw = csv::trim(row[*c_draught]);
        if (!raw.empty()) {
            const auto d = csv::parse_double(raw);
            if (!d) {
                return std::nullopt;
            }
            if (*d != 0.0) {  // 0 is the "not available" sentinel
                fix.draught = *d;
            }
        }
    }
    if (!is_valid_fix(fix)) {
        return std::nullopt;
    }
    return fix;
}

}  // namespace

PositionTable parse_position_table(std::string_view text) {
    csv::Cursor cur(text);
    std::vector<std::string_view> row;
    if (!cur.next(row)) {
        throw Error(Errc::EmptyFile, "positions table has no header");
    }
    const csv::Header header(row);
    const auto c_id = header.require("vessel_id");
    const auto c_t = header.require("timestamp");
    const auto c_lat = header.require("lat");
    const auto c_lon = header.require("lon");
    const auto c_sog = header.require("sog");
    const auto c_draught = header.find("draught");

    PositionTable table;
    table.fixes.reserve(text.size() / 48);
    while (cur.next(row)) {
        if (auto fix = parse_fix_row(row, c_id, c_t, c_lat, c_lon, c_sog, c_draught)) {
            table.fixes.push_back(std::move(*fix));
        } else {
            ++table.rejected;
        }
    }
    return table;
}

PositionTable load_position_table(const std::filesystem::path& path) {
    return parse_position_table(csv::read_file(path));
}

std::string format_position_table(std::span<const PositionFix> fixes) {
    std::string out = "vessel_id,timestamp,lat,lon,sog,draught\n";
    out.reserve(fixes.size() * 64);
    for (const auto& f : fixes) {
        out += csv::escape(f.vessel_id);
        out.push_back(',');
        out += format_iso8601(f.t);
        out.push_back(',');
        out += csv::format_double(f.pos.lat());
        out.push_back(',');
        out += csv::format_double(f.pos.lon());
        out.push_back(',');
        out += csv::format_double(f.sog);
        out.push_back(',');
        if (f.draught) {
            out += csv::format_double(*f.draught);
        }
        out.push_back('\n');
    }
    return out;
}

Registry parse_registry(std::string_view text) {
    csv::Cursor cur(text);
    std::vector<std::string_view> row;
    if (!cur.next(row)) {
        throw Error(Errc::EmptyFile, "registry has no header");
    }
    const csv::Header header(row);
    const auto c_id = header.require("vessel_id");
    const auto c_imo = header.require("imo");
    const auto c_name = header.require("name");
    const auto c_len = header.require("length_m");
    const auto c_beam = header.require("beam_m");
    const auto c_dwt = header.require("dwt");
    const auto c_family = header.require("cargo_family");
    const std::size_t needed = std::max({c_id, c_imo, c_name, c_len, c_beam, c_dwt, c_family});

    Registry reg;
    std::unordered_map<std::string, bool> seen;
    while (cur.next(row)) {
        if (row.size() <= needed) {
            ++reg.rejected;
            continue;
        }
        VesselRecord v;
        v.vessel_id = std::string(csv::trim(row[c_id]));
        v.name = std::string(csv::trim(row[c_name]));
        const auto imo_text = csv::trim(row[c_imo]);
        bool ok = true;
        if (!imo_text.empty()) {
            const auto imo = csv::parse_int(imo_text);
            ok = imo && *imo > 0 && *imo <= 9'999'999;
            if (ok) {
                v.imo = static_cast<std::uint32_t>(*imo);
            }
        }
        const auto len = csv::parse_double(row[c_len]);
        const auto beam = csv::parse_double(row[c_beam]);
        const auto dwt = csv::parse_double(row[c_dwt]);
        const auto family = parse_cargo_family(row[c_family]);
        ok = ok && len && beam && dwt && family;
        if (ok) {
            v.length = *len;
            v.beam = *beam;
            v.dwt = *dwt;
            v.cargo_family = *family;
        }
        if (!ok || !is_valid_record(v) || seen.count(v.vessel_id)) {
            ++reg.rejected;
            continue;
        }
        seen.emplace(v.vessel_id, true);
        reg.vessels.push_back(std::move(v));
    }
    return reg;
}

Registry load_registry(const std::filesystem::path& path) {
    return parse_registry(csv::read_file(path));
}

std::string format_registry(std::span<const VesselRecord> vessels) {
    std::string out = "vessel_id,imo,name,length_m,beam_m,dwt,cargo_family\n";
    for (const auto& v : vessels) {
        csv::append_row(out, {csv::escape(v.vessel_id), v.imo ? std::to_string(*v.imo) : std::string(),
                              csv::escape(v.name), csv::format_double(v.length), csv::format_double(v.beam),
                              csv::format_double(v.dwt), std::string(to_string(v.cargo_family))});
    }
    return out;
}

std::vector<Track> build_tracks(std::span<const PositionFix> fixes, std::span<const VesselRecord> registry) {
    std::unordered_map<std::string_view, const VesselRecord*> by_id;
    by_id.reserve(registry.size());
    for (const auto& v : registry) {
        by_id.emplace(v.vessel_id, &v);
    }

    // vessel_id -> input indices, in input order
    std::map<std::string_view, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < fixes.size(); ++i) {
        groups[fixes[i].vessel_id].push_back(i);
    }

    std::vector<Track> tracks;
    tracks.reserve(groups.size());
    for (auto& [id, idx] : groups) {
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fixes[a].t < fixes[b].t; });
        Track track;
        if (auto it = by_id.find(id); it != by_id.end()) {
            track.vessel = *it->second;
        } else {
            track.vessel.vessel_id = std::string(id);
            track.vessel.cargo_family = CargoFamily::Other;
            track.vessel.dwt = 0.0;
            track.unregistered = true;
        }
        track.fixes.reserve(idx.size());
        for (std::size_t i : idx) {
            if (!track.fixes.empty() && track.fixes.back().t == fixes[i].t) {
                continue;
            }
            track.fixes.push_back(fixes[i]);
        }
        tracks.push_back(std::move(track));
    }
    return tracks;
}

}  // namespace darksts::ais
