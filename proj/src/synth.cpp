#include "darksts/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::synth {

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    const auto v = lo + static_cast<std::int64_t>(std::floor(uniform() * span));
    return std::min(v, hi);
}

double Rng::normal(double mean, double sigma) {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

constexpr double kKnot = 1852.0 / 3600.0;  // m/s
constexpr double kVisitorSpeedKn = 4.0;
constexpr double kVisitorHomeOffsetM = 1'500.0;
constexpr double kDriftRampS = 3'600.0;
constexpr double kLaneMarginM = 3'000.0;
constexpr double kLaneSpacingM = 2'000.0;

// Training-set counts per label, used as sampling weights.
constexpr double kWeightGeneralCargo = 11'995;
constexpr double kWeightBulkCarrier = 1'946;
constexpr double kWeightTanker = 3'303;
constexpr double kWeightVlcc = 261;
constexpr double kWeightCargoSts = 2'081;
constexpr double kWeightTankerSts = 637;

void invalid(const std::string& msg) { throw Error(Errc::ConfigInvalid, msg); }

double round_to(double v, double quantum) { return std::round(v / quantum) * quantum; }

using classify::ShipClass;

ShipClass draw_singleton_class(Rng& rng) {
    const double total = kWeightGeneralCargo + kWeightBulkCarrier + kWeightTanker + kWeightVlcc;
    double u = rng.uniform() * total;
    if ((u -= kWeightGeneralCargo) < 0) return ShipClass::GeneralCargo;
    if ((u -= kWeightBulkCarrier) < 0) return ShipClass::BulkCarrier;
    if ((u -= kWeightTanker) < 0) return ShipClass::Tanker;
    return ShipClass::VLCC;
}

ShipClass draw_family_class(Rng& rng, bool dry) {
    if (dry) {
        return rng.uniform() * (kWeightGeneralCargo + kWeightBulkCarrier) < kWeightGeneralCargo
                   ? ShipClass::GeneralCargo
                   : ShipClass::BulkCarrier;
    }
    return rng.uniform() * (kWeightTanker + kWeightVlcc) < kWeightTanker ? ShipClass::Tanker : ShipClass::VLCC;
}

struct ClassProfile {
    ais::CargoFamily family;
    double dwt_lo, dwt_hi;
    double draught_lo, draught_hi;
    const char* tag;
};

ClassProfile profile(ShipClass c) {
    switch (c) {
        case ShipClass::GeneralCargo: return {ais::CargoFamily::Dry, 1'500, 5'800, 4.0, 6.5, "GC"};
        case ShipClass::BulkCarrier: return {ais::CargoFamily::Dry, 32'000, 82'000, 9.0, 12.5, "BC"};
        case ShipClass::Tanker: return {ais::CargoFamily::Liquid, 1'500, 5'800, 4.0, 6.5, "TK"};
        default: return {ais::CargoFamily::Liquid, 150'000, 320'000, 14.0, 20.0, "VL"};
    }
}

struct Drift {
    double ax, ay, wx, wy, px, py;
};

// Motion of one vessel, in meters east/north of the region center and
// seconds since scenario start.
struct Plan {
    geo::LocalOffset home;
    Drift drift{};
    double base_draught = 0.0;
    // drift is damped to zero over [quiet0, quiet1]
    bool has_quiet = false;
    double quiet0 = 0.0, quiet1 = 0.0;
    // visitor excursion: home -> target over (depart, arrive), hold, back over (leave, back)
    bool visitor = false;
    geo::LocalOffset target;
    double depart = 0.0, arrive = 0.0, leave = 0.0, back = 0.0;
    // transit lane
    bool transit = false;
    double lane_north = 0.0, x_min = 0.0, x_max = 0.0, speed = 0.0, phase = 0.0;
    // draught change after an event
    double draught_change_at = -1.0;
    double draught_delta = 0.0;
};

struct State {
    geo::LocalOffset pos;
    double speed = 0.0;  // m/s
};

State state_at(const Plan& p, double t) {
    if (p.transit) {
        const double len = p.x_max - p.x_min;
        const double u = std::fmod(p.phase + p.speed * t, 2.0 * len);
        const double x = u < len ? p.x_min + u : p.x_min + 2.0 * len - u;
        return {{x, p.lane_north}, p.speed};
    }
    if (p.visitor) {
        const auto lerp = [](geo::LocalOffset a, geo::LocalOffset b, double f) {
            return geo::LocalOffset{a.east + (b.east - a.east) * f, a.north + (b.north - a.north) * f};
        };
        if (t > p.depart && t < p.arrive) {
            const double f = (t - p.depart) / (p.arrive - p.depart);
            const double v = std::hypot(p.target.east - p.home.east, p.target.north - p.home.north) /
                             (p.arrive - p.depart);
            return {lerp(p.home, p.target, f), v};
        }
        if (t >= p.arrive && t <= p.leave) {
            return {p.target, 0.0};
        }
        if (t > p.leave && t < p.back) {
            const double f = (t - p.leave) / (p.back - p.leave);
            const double v = std::hypot(p.target.east - p.home.east, p.target.north - p.home.north) /
                             (p.back - p.leave);
            return {lerp(p.target, p.home, f), v};
        }
    }
    double g = 1.0, dg = 0.0;
    if (p.has_quiet) {
        if (t >= p.quiet0 && t <= p.quiet1) {
            g = 0.0;
        } else if (t < p.quiet0 && p.quiet0 - t < kDriftRampS) {
            g = (p.quiet0 - t) / kDriftRampS;
            dg = -1.0 / kDriftRampS;
        } else if (t > p.quiet1 && t - p.quiet1 < kDriftRampS) {
            g = (t - p.quiet1) / kDriftRampS;
            dg = 1.0 / kDriftRampS;
        }
    }
    const Drift& d = p.drift;
    const double dx = d.ax * std::sin(d.wx * t + d.px);
    const double dy = d.ay * std::sin(d.wy * t + d.py);
    const double vx = dg * dx + g * d.ax * d.wx * std::cos(d.wx * t + d.px);
    const double vy = dg * dy + g * d.ay * d.wy * std::cos(d.wy * t + d.py);
    return {{p.home.east + g * dx, p.home.north + g * dy}, std::hypot(vx, vy)};
}

Drift draw_drift(Rng& rng) {
    const auto omega = [&] { return 2.0 * std::numbers::pi / rng.uniform(3.0 * 3600.0, 8.0 * 3600.0); };
    Drift d{};
    d.ax = rng.uniform(80.0, 250.0);
    d.ay = rng.uniform(80.0, 250.0);
    d.wx = omega();
    d.wy = omega();
    d.px = rng.uniform(0.0, 2.0 * std::numbers::pi);
    d.py = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return d;
}

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(i) - 1));
        std::swap(v[i - 1], v[j]);
    }
}

std::string numbered(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s-%03zu", prefix, i);
    return buf;
}

geo::GeoPoint quantized(const geo::GeoPoint& p) {
    return geo::GeoPoint(round_to(p.lat(), 1e-6), geo::normalize_lon(round_to(p.lon(), 1e-6)));
}

}  // namespace

void SynthConfig::validate() const {
    sts.validate();
    audit.validate();
    if (duration.count() <= 0) invalid("scenario duration must be positive");
    if (vessel_count < 2 * sts_count) invalid("vessel_count must be at least twice sts_count");
    if (!(dark_fraction >= 0.0 && dark_fraction <= 1.0)) invalid("dark_fraction must be in [0, 1]");
    if (!(transit_fraction >= 0.0 && transit_fraction <= 1.0)) invalid("transit_fraction must be in [0, 1]");
    if (report_interval.count() <= 0) invalid("report_interval must be positive");
    if (1.5 * static_cast<double>(report_interval.count()) > static_cast<double>(sts.max_gap.count())) {
        invalid("report_interval too long for the STS max_gap");
    }
    if (!(resolution_m > 0.0)) invalid("resolution must be positive");
    if (sts.max_distance_m > 1'000.0 || audit.radius_m > 1'000.0) {
        invalid("the scenario layout supports STS and audit radii up to 1000 m");
    }
    if (!(slot_spacing_m >= 4'000.0)) invalid("slot spacing must be at least 4000 m");
    if (sts_count > 0 && duration < 3 * sts.min_duration + Seconds{6 * 3600}) {
        invalid("scenario too short for planted events");
    }
}

Scenario generate_scenario(std::uint64_t seed, const SynthConfig& config) {
    config.validate();
    Rng rng(seed);
    Scenario s;
    s.seed = seed;
    s.config = config;

    const double T = static_cast<double>(config.duration.count());
    const double S = config.slot_spacing_m;
    const std::size_t n_events = config.sts_count;
    const std::size_t n_background = config.vessel_count - 2 * n_events;
    const auto n_transit =
        static_cast<std::size_t>(std::llround(static_cast<double>(n_background) * config.transit_fraction));
    const std::size_t n_anchored = n_background - n_transit;

    std::size_t n = 1;
    while (((n + 1) / 2) * ((n + 1) / 2) < n_events || n * n < n_events + n_anchored) {
        ++n;
    }
    const double half_lattice = static_cast<double>(n - 1) / 2.0 * S;
    const auto slot_offset = [&](std::size_t i, std::size_t j) {
        return geo::LocalOffset{static_cast<double>(i) * S - half_lattice, static_cast<double>(j) * S - half_lattice};
    };

    std::vector<std::pair<std::size_t, std::size_t>> site_slots, other_slots;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            (i % 2 == 0 && j % 2 == 0 ? site_slots : other_slots).emplace_back(i, j);
        }
    }
    shuffle(site_slots, rng);
    other_slots.insert(other_slots.end(), site_slots.begin() + static_cast<std::ptrdiff_t>(n_events),
                       site_slots.end());
    site_slots.resize(n_events);
    shuffle(other_slots, rng);
    other_slots.resize(n_anchored);

    // vessels
    std::set<std::string> used_ids;
    std::vector<Plan> plans;
    std::vector<ShipClass> classes;
    const auto add_vessel = [&](ShipClass c) {
        std::string id;
        do {
            char buf[32];
            std::snprintf(buf, sizeof buf, "273%06lld", static_cast<long long>(rng.integer(0, 999'999)));
            id = buf;
        } while (!used_ids.insert(id).second);
        const ClassProfile pr = profile(c);
        ais::VesselRecord v;
        v.vessel_id = id;
        v.imo = ais::make_imo(static_cast<std::uint32_t>(rng.integer(100'000, 999'999)));
        v.name = std::string("SYN ") + pr.tag + " " + std::to_string(s.registry.size() + 1);
        v.dwt = std::round(rng.uniform(pr.dwt_lo, pr.dwt_hi));
        v.length = round_to(std::exp((std::log(v.dwt) + 5.0) / 3.0 + rng.normal(0.0, 0.03)), 0.1);
        v.beam = round_to(v.length * rng.uniform(0.14, 0.18), 0.1);
        v.cargo_family = pr.family;
        s.registry.push_back(v);
        classes.push_back(c);
        Plan p;
        p.drift = draw_drift(rng);
        p.base_draught = round_to(rng.uniform(pr.draught_lo, pr.draught_hi), 0.1);
        plans.push_back(p);
        return s.registry.size() - 1;
    };

    // planted pairs
    struct Pair {
        std::size_t host, visitor;
        double start, end;
        geo::LocalOffset site;
        std::pair<std::size_t, std::size_t> slot;
    };
    std::vector<Pair> pairs;
    const double min_dur = static_cast<double>(config.sts.min_duration.count());
    const double visitor_speed = kVisitorSpeedKn * kKnot;
    for (std::size_t e = 0; e < n_events; ++e) {
        const bool dry = rng.uniform() * (kWeightCargoSts + kWeightTankerSts) < kWeightCargoSts;
        const std::size_t host = add_vessel(draw_family_class(rng, dry));
        const std::size_t visitor = add_vessel(draw_family_class(rng, dry));
        const auto site = slot_offset(site_slots[e].first, site_slots[e].second);
        const double duration = std::round(rng.uniform(1.1 * min_dur, 3.0 * min_dur));
        const double start = std::round(rng.uniform(3.0 * 3600.0, T - duration - 3.0 * 3600.0));
        const double end = start + duration;
        const double separation = rng.uniform(50.0, 0.8 * config.sts.max_distance_m);
        const double bearing = rng.uniform(0.0, 2.0 * std::numbers::pi);

        Plan& h = plans[host];
        h.home = site;
        h.has_quiet = true;
        h.quiet0 = start - kDriftRampS;
        h.quiet1 = end + kDriftRampS;

        Plan& v = plans[visitor];
        v.home = {site.east + kVisitorHomeOffsetM, site.north};
        v.visitor = true;
        v.target = {site.east + separation * std::cos(bearing), site.north + separation * std::sin(bearing)};
        const double travel = std::ceil(
            std::hypot(v.target.east - v.home.east, v.target.north - v.home.north) / visitor_speed);
        v.arrive = start;
        v.depart = start - travel;
        v.leave = end;
        v.back = end + travel;
        v.has_quiet = true;
        v.quiet0 = v.depart - kDriftRampS;
        v.quiet1 = v.back + kDriftRampS;

        const double delta = round_to(rng.uniform(0.3, 1.0), 0.1) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        h.draught_change_at = v.draught_change_at = end + 2.0 * 3600.0;
        h.draught_delta = delta;
        v.draught_delta = -delta;

        pairs.push_back({host, visitor, start, end, site, site_slots[e]});
    }

    // background
    std::vector<std::pair<std::size_t, std::size_t>> anchored_slot_of;  // (slot index into other_slots, vessel)
    std::vector<std::ptrdiff_t> vessel_at_slot(n * n, -1);
    for (std::size_t k = 0; k < n_anchored; ++k) {
        const std::size_t idx = add_vessel(draw_singleton_class(rng));
        plans[idx].home = slot_offset(other_slots[k].first, other_slots[k].second);
        vessel_at_slot[other_slots[k].second * n + other_slots[k].first] = static_cast<std::ptrdiff_t>(idx);
    }
    const double half_side = 1.5 * S;
    for (std::size_t k = 0; k < n_transit; ++k) {
        const std::size_t idx = add_vessel(draw_singleton_class(rng));
        Plan& p = plans[idx];
        p.transit = true;
        // one lane per transit, alternating sides, so no two transits ever meet
        const double lane = half_lattice + half_side + kLaneMarginM + static_cast<double>(k / 2) * kLaneSpacingM;
        p.lane_north = k % 2 == 0 ? lane : -lane;
        p.x_min = -half_lattice - half_side;
        p.x_max = half_lattice + half_side;
        p.speed = rng.uniform(8.0, 12.0) * kKnot;
        p.phase = rng.uniform(0.0, 2.0 * (p.x_max - p.x_min));
    }

    // dark selection
    const auto n_dark = static_cast<std::size_t>(std::llround(config.dark_fraction * static_cast<double>(n_events)));
    std::vector<std::size_t> order(n_events);
    for (std::size_t e = 0; e < n_events; ++e) order[e] = e;
    shuffle(order, rng);
    std::vector<std::ptrdiff_t> suppressed(n_events, -1);
    for (std::size_t k = 0; k < n_dark; ++k) {
        const Pair& pr = pairs[order[k]];
        suppressed[order[k]] = static_cast<std::ptrdiff_t>(rng.uniform() < 0.5 ? pr.host : pr.visitor);
    }

    const auto to_geo = [&](const geo::LocalOffset& o) { return geo::offset_to_geo(o, config.region_center); };
    const auto scene_time = [](const Pair& p) { return p.start + std::floor((p.end - p.start) / 2.0); };

    // fixes
    const double interval = static_cast<double>(config.report_interval.count());
    const double suppress_margin = static_cast<double>(config.audit.window.count()) + 3600.0;
    for (std::size_t v = 0; v < plans.size(); ++v) {
        const Plan& p = plans[v];
        std::vector<double> times;
        for (double t = std::round(rng.uniform(0.0, interval)); t <= T;
             t += std::max(1.0, std::round(interval * rng.uniform(0.5, 1.5)))) {
            times.push_back(t);
        }
        if (p.visitor) {
            times.insert(times.end(), {p.depart, p.arrive, p.leave, p.back});
        } else if (p.has_quiet) {
            times.insert(times.end(), {p.quiet0 + kDriftRampS, p.quiet1 - kDriftRampS});
        }
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end()), times.end());

        double hide0 = 1.0, hide1 = 0.0;
        for (std::size_t e = 0; e < n_events; ++e) {
            if (suppressed[e] == static_cast<std::ptrdiff_t>(v)) {
                hide0 = scene_time(pairs[e]) - suppress_margin;
                hide1 = scene_time(pairs[e]) + suppress_margin;
            }
        }
        for (const double t : times) {
            if (t < 0.0 || t > T) continue;
            const State st = state_at(p, t);
            const double noise = p.transit ? rng.normal(0.0, 0.2) : rng.uniform(0.0, 0.15);
            if (t >= hide0 && t <= hide1) continue;
            ais::PositionFix f;
            f.vessel_id = s.registry[v].vessel_id;
            f.t = config.start + Seconds{static_cast<std::int64_t>(t)};
            f.pos = quantized(to_geo(st.pos));
            f.sog = std::clamp(round_to(st.speed / kKnot + noise, 0.1), 0.0, 102.2);
            double draught = p.base_draught;
            if (p.draught_change_at >= 0.0 && t >= p.draught_change_at) {
                draught = std::clamp(round_to(draught + p.draught_delta, 0.1), 0.5, 30.0);
            }
            f.draught = draught;
            s.fixes.push_back(std::move(f));
        }
    }
    std::stable_sort(s.fixes.begin(), s.fixes.end(), [](const ais::PositionFix& a, const ais::PositionFix& b) {
        return a.vessel_id < b.vessel_id;
    });

    // scenes, truth and detections
    const auto width = static_cast<std::int64_t>(std::llround(2.0 * half_side / config.resolution_m));
    const double side = static_cast<double>(width) * config.resolution_m;
    for (std::size_t e = 0; e < n_events; ++e) {
        const Pair& pr = pairs[e];
        const double ts = scene_time(pr);
        scene::SceneMeta sc;
        sc.scene_id = numbered("scene", e + 1);
        sc.acquired_at = config.start + Seconds{static_cast<std::int64_t>(ts)};
        sc.resolution_m = config.resolution_m;
        sc.cloud_score = round_to(rng.uniform(0.0, 0.6), 0.01);
        sc.origin = to_geo({pr.site.east - side / 2.0, pr.site.north + side / 2.0});
        sc.footprint = {sc.origin, geo::offset_to_geo({side, 0.0}, sc.origin),
                        geo::offset_to_geo({side, -side}, sc.origin), geo::offset_to_geo({0.0, -side}, sc.origin)};
        sc.width = width;
        sc.height = width;
        sc.validate();

        PlantedEvent ev;
        ev.event_id = numbered("sts", e + 1);
        ev.scene_id = sc.scene_id;
        const auto& ra = s.registry[pr.host];
        const auto& rb = s.registry[pr.visitor];
        ev.vessel_a = std::min(ra.vessel_id, rb.vessel_id);
        ev.vessel_b = std::max(ra.vessel_id, rb.vessel_id);
        ev.start = config.start + Seconds{static_cast<std::int64_t>(pr.start)};
        ev.end = config.start + Seconds{static_cast<std::int64_t>(pr.end)};
        ev.sts_class = classify::classify_sts(classes[pr.host], classes[pr.visitor]);
        const State sa = state_at(plans[pr.host], ts);
        const State sb = state_at(plans[pr.visitor], ts);
        ev.separation_m = round_to(std::hypot(sb.pos.east - sa.pos.east, sb.pos.north - sa.pos.north), 0.01);
        ev.site = quantized(to_geo(pr.site));
        if (suppressed[e] >= 0) {
            ev.dark = true;
            ev.suppressed_vessel = s.registry[static_cast<std::size_t>(suppressed[e])].vessel_id;
        }

        const geo::GeoPoint ga = to_geo(sa.pos), gb = to_geo(sb.pos);
        const auto center = scene::geo_to_pixel(sc, geo::interpolate(ga, gb, 0.5));
        const double l_max = std::max(ra.length, rb.length);
        const double ext_e = std::abs(sb.pos.east - sa.pos.east) + l_max;
        const double ext_n = std::abs(sb.pos.north - sa.pos.north) + 0.3 * l_max;
        const double bw = round_to(ext_e / config.resolution_m, 0.5);
        const double bh = round_to(ext_n / config.resolution_m, 0.5);
        s.detections.push_back(dark::make_detection(sc, *classify::label_for(ev.sts_class),
                                                    {center.x - bw / 2.0, center.y - bh / 2.0, bw, bh},
                                                    round_to(rng.uniform(0.6, 0.99), 0.01)));

        for (int dj = -1; dj <= 1; ++dj) {
            for (int di = -1; di <= 1; ++di) {
                const auto i = static_cast<std::ptrdiff_t>(pr.slot.first) + di;
                const auto j = static_cast<std::ptrdiff_t>(pr.slot.second) + dj;
                if ((di == 0 && dj == 0) || i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(n) ||
                    j >= static_cast<std::ptrdiff_t>(n)) {
                    continue;
                }
                const std::ptrdiff_t idx = vessel_at_slot[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)];
                if (idx < 0) continue;
                const auto& rec = s.registry[static_cast<std::size_t>(idx)];
                ev.bystanders.push_back(rec.vessel_id);
                const auto px = scene::geo_to_pixel(sc, to_geo(state_at(plans[static_cast<std::size_t>(idx)], ts).pos));
                const double w = round_to(rec.length / config.resolution_m, 0.5);
                const double h = round_to(rec.beam / config.resolution_m, 0.5);
                s.detections.push_back(dark::make_detection(sc, *classify::label_for(classes[static_cast<std::size_t>(idx)]),
                                                            {px.x - w / 2.0, px.y - h / 2.0, w, h},
                                                            round_to(rng.uniform(0.6, 0.99), 0.01)));
            }
        }
        std::sort(ev.bystanders.begin(), ev.bystanders.end());
        s.scenes.push_back(std::move(sc));
        s.truth.push_back(std::move(ev));
    }
    return s;
}

std::string format_truth(std::span<const PlantedEvent> truth) {
    std::string out =
        "event_id,scene_id,vessel_a,vessel_b,start,end,sts_class,separation_m,site_lat,site_lon,dark,"
        "suppressed_vessel,bystanders\n";
    for (const auto& e : truth) {
        std::string bys;
        for (const auto& b : e.bystanders) {
            if (!bys.empty()) bys += ';';
            bys += b;
        }
        csv::append_row(out, {e.event_id, e.scene_id, e.vessel_a, e.vessel_b, format_iso8601(e.start),
                              format_iso8601(e.end), std::string(classify::to_string(e.sts_class)),
                              csv::format_double(e.separation_m), csv::format_double(e.site.lat()),
                              csv::format_double(e.site.lon()), e.dark ? "1" : "0", e.suppressed_vessel, bys});
    }
    return out;
}

std::vector<PlantedEvent> parse_truth(std::string_view text) {
    csv::Cursor cur(text);
    std::vector<std::string_view> fields;
    if (!cur.next(fields)) {
        throw Error(Errc::EmptyFile, "truth file has no header");
    }
    const csv::Header header(fields);
    const std::size_t c_id = header.require("event_id"), c_scene = header.require("scene_id"),
                      c_a = header.require("vessel_a"), c_b = header.require("vessel_b"),
                      c_start = header.require("start"), c_end = header.require("end"),
                      c_class = header.require("sts_class"), c_sep = header.require("separation_m"),
                      c_lat = header.require("site_lat"), c_lon = header.require("site_lon"),
                      c_dark = header.require("dark"), c_sup = header.require("suppressed_vessel"),
                      c_bys = header.require("bystanders");
    std::vector<PlantedEvent> out;
    while (cur.next(fields)) {
        if (fields.size() != header.size()) {
            throw Error(Errc::MalformedRow, "truth row " + std::to_string(cur.line()) + " has wrong field count");
        }
        PlantedEvent e;
        e.event_id = fields[c_id];
        e.scene_id = fields[c_scene];
        e.vessel_a = fields[c_a];
        e.vessel_b = fields[c_b];
        const auto start = parse_iso8601(fields[c_start]);
        const auto end = parse_iso8601(fields[c_end]);
        const auto cls = classify::parse_sts_class(fields[c_class]);
        const auto sep = csv::parse_double(fields[c_sep]);
        const auto lat = csv::parse_double(fields[c_lat]);
        const auto lon = csv::parse_double(fields[c_lon]);
        if (!start || !end || !cls || !sep || !lat || !lon) {
            throw Error(Errc::MalformedRow, "truth row " + std::to_string(cur.line()) + " is malformed");
        }
        e.start = *start;
        e.end = *end;
        e.sts_class = *cls;
        e.separation_m = *sep;
        e.site = geo::GeoPoint(*lat, *lon);
        e.dark = fields[c_dark] == "1";
        e.suppressed_vessel = fields[c_sup];
        std::string_view rest = fields[c_bys];
        while (!rest.empty()) {
            const auto semi = rest.find(';');
            e.bystanders.emplace_back(rest.substr(0, semi));
            rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
        }
        out.push_back(std::move(e));
    }
    return out;
}

void export_scenario(const Scenario& s, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
    }
    csv::write_file(dir / "positions.csv", ais::format_position_table(s.fixes));
    csv::write_file(dir / "registry.csv", ais::format_registry(s.registry));
    csv::write_file(dir / "scenes.csv", scene::format_scenes(s.scenes));
    csv::write_file(dir / "detections.csv", dark::format_detections(s.detections));
    csv::write_file(dir / "truth.csv", format_truth(s.truth));
}

}  // namespace darksts::synth
