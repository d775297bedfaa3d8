// darksts: command-line front end for the STS pipeline.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "darksts/ais.hpp"
#include "darksts/classify.hpp"
#include "darksts/csv.hpp"
#include "darksts/dark.hpp"
#include "darksts/error.hpp"
#include "darksts/nmea.hpp"
#include "darksts/scene.hpp"
#include "darksts/sts.hpp"
#include "darksts/synth.hpp"
#include "darksts/time.hpp"

namespace fs = std::filesystem;
using namespace darksts;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAssertion = 2;

struct RunConfig {
    sts::StsParams sts;
    dark::AuditParams audit;
    double buffer_m = scene::kDefaultBufferM;
    double cloud_threshold = scene::kDefaultCloudThreshold;
    double match_hours = 2.0;
    double min_duration_h = 2.0;
    double window_hours = 12.0;
    std::int64_t resample_s = 300;
    std::int64_t max_gap_s = 1'800;
    std::string positions, registry, scenes, detections, events, out = ".";
    std::vector<std::string> nmea;
    unsigned workers = 1;
    bool verbose = false;

    // synth
    std::uint64_t seed = 7;
    std::size_t vessels = 20;
    std::size_t sts_count = 5;
    double dark_fraction = 0.4;
    double duration_hours = 48.0;
    std::int64_t report_interval_s = 180;

    void finalize() {
        sts.min_duration = Seconds{static_cast<std::int64_t>(std::llround(min_duration_h * 3600.0))};
        sts.resample_step = Seconds{resample_s};
        sts.max_gap = Seconds{max_gap_s};
        audit.window = Seconds{static_cast<std::int64_t>(std::llround(window_hours * 3600.0))};
        sts.validate();
        audit.validate();
        if (!(buffer_m > 0.0)) throw Error(Errc::ConfigInvalid, "buffer must be positive");
        if (!(cloud_threshold >= 0.0 && cloud_threshold <= 1.0)) {
            throw Error(Errc::ConfigInvalid, "cloud threshold must be in [0, 1]");
        }
        if (!(match_hours >= 0.0)) throw Error(Errc::ConfigInvalid, "match window must be non-negative");
        if (workers == 0) throw Error(Errc::ConfigInvalid, "workers must be at least 1");
    }

    Seconds match_window() const { return Seconds{static_cast<std::int64_t>(std::llround(match_hours * 3600.0))}; }
};

bool g_verbose = false;

void log(const std::string& msg) {
    if (g_verbose) std::cerr << "darksts: " << msg << '\n';
}

void add_sts_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--max-distance-m", rc.sts.max_distance_m, "STS proximity threshold")->capture_default_str();
    sub->add_option("--min-duration-h", rc.min_duration_h, "minimum STS duration")->capture_default_str();
    sub->add_option("--max-sog-kn", rc.sts.max_sog_kn, "speed below which a vessel counts as stationary")
        ->capture_default_str();
    sub->add_option("--resample-s", rc.resample_s, "resampling grid step")->capture_default_str();
    sub->add_option("--max-gap-s", rc.max_gap_s, "longest report gap bridged by interpolation")
        ->capture_default_str();
}

void add_audit_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--radius-m", rc.audit.radius_m, "AIS search radius around a detection")->capture_default_str();
    sub->add_option("--window-hours", rc.window_hours, "AIS search window each side of acquisition")
        ->capture_default_str();
    sub->add_option("--min-identities", rc.audit.min_identities, "identities needed to clear a detection")
        ->capture_default_str();
}

void add_scene_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--buffer-m", rc.buffer_m, "tile margin around the objects")->capture_default_str();
    sub->add_option("--cloud-threshold", rc.cloud_threshold, "scenes above this cloud score are skipped")
        ->capture_default_str();
    sub->add_option("--match-hours", rc.match_hours, "largest AIS-to-acquisition time difference")
        ->capture_default_str();
}

void add_synth_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--seed", rc.seed, "scenario seed")->capture_default_str();
    sub->add_option("--vessels", rc.vessels, "fleet size")->capture_default_str();
    sub->add_option("--sts", rc.sts_count, "planted STS events")->capture_default_str();
    sub->add_option("--dark-fraction", rc.dark_fraction, "share of planted events with suppressed AIS")
        ->capture_default_str();
    sub->add_option("--duration-hours", rc.duration_hours, "scenario length")->capture_default_str();
    sub->add_option("--report-interval-s", rc.report_interval_s, "mean spacing of AIS reports")
        ->capture_default_str();
}

void add_common_options(CLI::App* sub, RunConfig& rc) {
    sub->add_option("--out", rc.out, "output directory")->capture_default_str();
    sub->add_option("--workers", rc.workers, "worker threads")->capture_default_str();
    sub->add_flag("--verbose", rc.verbose, "progress on stderr");
}

sts::ConfigEcho echo_of(const CLI::App* sub) {
    sts::ConfigEcho echo;
    echo.emplace_back("command", sub->get_name());
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help" || name == "verbose") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) {
                if (!value.empty()) value += ';';
                value += r;
            }
        } else {
            value = opt->get_default_str();
        }
        echo.emplace_back(name, value);
    }
    return echo;
}

void write_run_config(const fs::path& dir, const sts::ConfigEcho& echo) {
    std::string text;
    for (const auto& [k, v] : echo) {
        if (k == "command") continue;
        text += k + " = " + v + "\n";
    }
    csv::write_file(dir / "run_config.txt", text);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

std::vector<ais::PositionFix> load_positions(const std::string& path) {
    if (path.empty()) return {};
    const std::string text = csv::read_file(path);
    // a zero-length file is an empty feed rather than a broken one
    if (csv::trim(text).empty()) return {};
    auto table = ais::parse_position_table(text);
    if (table.rejected > 0) log("rejected " + std::to_string(table.rejected) + " position rows in " + path);
    return std::move(table.fixes);
}

std::vector<ais::VesselRecord> load_registry(const std::string& path) {
    if (path.empty()) return {};
    const std::string text = csv::read_file(path);
    if (csv::trim(text).empty()) return {};
    auto reg = ais::parse_registry(text);
    if (reg.rejected > 0) log("rejected " + std::to_string(reg.rejected) + " registry rows in " + path);
    return std::move(reg.vessels);
}

std::vector<ais::Track> load_tracks(const RunConfig& rc) {
    const auto fixes = load_positions(rc.positions);
    const auto registry = load_registry(rc.registry);
    auto tracks = ais::build_tracks(fixes, registry);
    log("loaded " + std::to_string(fixes.size()) + " fixes for " + std::to_string(tracks.size()) + " vessels");
    return tracks;
}

std::vector<scene::SceneMeta> load_scenes(const std::string& path) {
    if (path.empty()) throw Error(Errc::ConfigInvalid, "--scenes is required");
    return scene::load_scenes(path);
}

// ---------------------------------------------------------------------------

int run_ingest(const RunConfig& rc, const sts::ConfigEcho& echo) {
    if (rc.positions.empty() && rc.nmea.empty()) {
        throw Error(Errc::ConfigInvalid, "ingest needs --positions and/or --nmea");
    }
    std::vector<ais::PositionFix> fixes = load_positions(rc.positions);
    std::vector<ais::VesselRecord> registry = load_registry(rc.registry);
    std::set<std::string> known;
    for (const auto& v : registry) known.insert(v.vessel_id);

    nmea::StreamStats total;
    for (const auto& path : rc.nmea) {
        auto res = nmea::decode_stream(csv::read_file(path));
        fixes.insert(fixes.end(), res.fixes.begin(), res.fixes.end());
        for (const auto& [mmsi, sv] : res.statics) {
            if (auto rec = nmea::to_vessel_record(sv); rec && known.insert(rec->vessel_id).second) {
                registry.push_back(*rec);
            }
        }
        const auto& s = res.stats;
        total.lines += s.lines;
        total.messages += s.messages;
        total.position_reports += s.position_reports;
        total.static_reports += s.static_reports;
        total.checksum_errors += s.checksum_errors;
        total.unsupported += s.unsupported;
        total.truncated += s.truncated;
        total.malformed += s.malformed;
        total.untimed += s.untimed;
        total.rejected_fixes += s.rejected_fixes;
    }

    const auto tracks = ais::build_tracks(fixes, registry);
    const fs::path out(rc.out);
    ensure_dir(out);

    std::vector<ais::PositionFix> normalized;
    std::string summary = "vessel_id,fixes,first,last,unregistered,ship_class\n";
    for (const auto& t : tracks) {
        normalized.insert(normalized.end(), t.fixes.begin(), t.fixes.end());
        csv::append_row(summary, {t.vessel.vessel_id, std::to_string(t.fixes.size()),
                                  t.fixes.empty() ? "" : format_iso8601(t.fixes.front().t),
                                  t.fixes.empty() ? "" : format_iso8601(t.fixes.back().t),
                                  t.unregistered ? "1" : "0",
                                  std::string(classify::to_string(classify::classify_vessel(t.vessel)))});
    }
    std::sort(registry.begin(), registry.end(),
              [](const ais::VesselRecord& a, const ais::VesselRecord& b) { return a.vessel_id < b.vessel_id; });
    csv::write_file(out / "positions.csv", ais::format_position_table(normalized));
    csv::write_file(out / "registry.csv", ais::format_registry(registry));
    csv::write_file(out / "tracks_summary.csv", summary);
    write_run_config(out, echo);

    std::cout << "ingest: " << normalized.size() << " fixes, " << tracks.size() << " vessels";
    if (!rc.nmea.empty()) {
        std::cout << "; nmea lines=" << total.lines << " messages=" << total.messages
                  << " positions=" << total.position_reports << " statics=" << total.static_reports
                  << " checksum_errors=" << total.checksum_errors << " unsupported=" << total.unsupported
                  << " truncated=" << total.truncated << " malformed=" << total.malformed
                  << " untimed=" << total.untimed << " rejected=" << total.rejected_fixes;
    }
    std::cout << '\n';
    return kExitOk;
}

std::vector<sts::StsEvent> stage_detect(const RunConfig& rc, const std::vector<ais::Track>& tracks,
                                        const sts::ConfigEcho& echo) {
    auto events = sts::detect_sts(tracks, rc.sts, rc.workers);
    const fs::path out(rc.out);
    ensure_dir(out);
    csv::write_file(out / "sts_events.csv", sts::format_events_csv(events));
    csv::write_file(out / "sts_events.geojson", sts::format_events_geojson(events, echo));
    log("detected " + std::to_string(events.size()) + " STS events");
    return events;
}

std::vector<scene::TileRecord> stage_tiles(const RunConfig& rc, const std::vector<ais::Track>& tracks,
                                           const std::vector<scene::SceneMeta>& scenes,
                                           const std::vector<sts::StsEvent>& events) {
    std::vector<scene::TileRecord> tiles;
    std::size_t skipped = 0;
    for (const auto& sc : scenes) {
        if (!scene::is_usable(sc, rc.cloud_threshold)) {
            ++skipped;
            continue;
        }
        const auto matches = scene::match_fixes_to_scene(sc, tracks, rc.match_window());
        auto t = scene::make_tiles(sc, matches, events, rc.buffer_m);
        tiles.insert(tiles.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
    }
    const fs::path out(rc.out);
    ensure_dir(out);
    csv::write_file(out / "tiles_manifest.csv", scene::format_manifest(tiles));
    log(std::to_string(tiles.size()) + " tiles from " + std::to_string(scenes.size() - skipped) + " scenes, " +
        std::to_string(skipped) + " skipped for cloud");
    return tiles;
}

dark::DarkStsReport stage_dark(const RunConfig& rc, const std::vector<ais::Track>& tracks,
                               const std::vector<scene::SceneMeta>& scenes, const sts::ConfigEcho& echo) {
    if (rc.detections.empty()) throw Error(Errc::ConfigInvalid, "--detections is required");
    const auto detections = dark::load_detections(rc.detections, scenes);
    auto report = dark::scan(detections, tracks, rc.audit, rc.workers);
    const fs::path out(rc.out);
    ensure_dir(out);
    csv::write_file(out / "dark_report.geojson", dark::format_report_geojson(report, echo));
    csv::write_file(out / "dark_summary.json", dark::format_summary_json(report, echo));
    log(std::to_string(report.dark_count) + " dark of " + std::to_string(report.sts_detections) +
        " STS detections");
    return report;
}

synth::SynthConfig synth_config(const RunConfig& rc) {
    synth::SynthConfig c;
    c.vessel_count = rc.vessels;
    c.sts_count = rc.sts_count;
    c.dark_fraction = rc.dark_fraction;
    if (!(rc.duration_hours > 0.0)) throw Error(Errc::ConfigInvalid, "duration must be positive");
    c.duration = Seconds{static_cast<std::int64_t>(std::llround(rc.duration_hours * 3600.0))};
    c.report_interval = Seconds{rc.report_interval_s};
    c.sts = rc.sts;
    c.audit = rc.audit;
    return c;
}

int run_synth(const RunConfig& rc, const sts::ConfigEcho& echo) {
    const auto s = synth::generate_scenario(rc.seed, synth_config(rc));
    synth::export_scenario(s, rc.out);
    write_run_config(rc.out, echo);
    std::cout << "synth: seed " << rc.seed << ", " << s.registry.size() << " vessels, " << s.fixes.size()
              << " fixes, " << s.truth.size() << " planted events, " << s.scenes.size() << " scenes\n";
    return kExitOk;
}

// Label histogram the tiler should produce for the planted scenario.
std::map<classify::TileLabel, std::size_t> expected_tiles(const synth::Scenario& s,
                                                          const std::set<std::string>& usable_scenes) {
    std::map<std::string, classify::ShipClass> class_of;
    for (const auto& v : s.registry) class_of[v.vessel_id] = classify::classify_vessel(v);
    std::map<classify::TileLabel, std::size_t> hist;
    for (const auto& ev : s.truth) {
        if (!usable_scenes.contains(ev.scene_id)) continue;
        if (!ev.dark) {
            if (auto l = classify::label_for(ev.sts_class)) ++hist[*l];
        } else {
            const auto& visible = ev.suppressed_vessel == ev.vessel_a ? ev.vessel_b : ev.vessel_a;
            if (auto l = classify::label_for(class_of.at(visible))) ++hist[*l];
        }
        for (const auto& b : ev.bystanders) {
            if (auto l = classify::label_for(class_of.at(b))) ++hist[*l];
        }
    }
    return hist;
}

int run_e2e(RunConfig rc, const sts::ConfigEcho& echo) {
    const fs::path root(rc.out);
    const fs::path data = root / "scenario";
    const auto scenario = synth::generate_scenario(rc.seed, synth_config(rc));
    synth::export_scenario(scenario, data);
    write_run_config(root, echo);

    int failures = 0;
    const auto check = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << '\n';
        if (!ok) ++failures;
    };

    rc.positions = (data / "positions.csv").string();
    rc.registry = (data / "registry.csv").string();
    rc.scenes = (data / "scenes.csv").string();
    rc.detections = (data / "detections.csv").string();
    const auto tracks = load_tracks(rc);
    const auto scenes = load_scenes(rc.scenes);

    const auto events = stage_detect(rc, tracks, echo);
    std::set<std::pair<std::string, std::string>> planted, found;
    std::size_t covered = 0;
    for (const auto& ev : scenario.truth) {
        if (ev.dark) continue;
        planted.emplace(ev.vessel_a, ev.vessel_b);
        for (const auto& d : events) {
            if (d.vessel_a == ev.vessel_a && d.vessel_b == ev.vessel_b && d.start <= ev.start + rc.sts.resample_step &&
                d.end >= ev.end - rc.sts.resample_step && d.sts_class == ev.sts_class) {
                ++covered;
                break;
            }
        }
    }
    for (const auto& d : events) found.emplace(d.vessel_a, d.vessel_b);
    check(found == planted && events.size() == planted.size(),
          "detect-sts: " + std::to_string(events.size()) + " events for " + std::to_string(planted.size()) +
              " visible planted transfers");
    check(covered == planted.size(), "detect-sts: every visible transfer recovered with its interval and class");

    const auto tiles = stage_tiles(rc, tracks, scenes, events);
    std::set<std::string> usable;
    for (const auto& sc : scenes) {
        if (scene::is_usable(sc, rc.cloud_threshold)) usable.insert(sc.scene_id);
    }
    std::map<classify::TileLabel, std::size_t> got;
    for (const auto& t : tiles) ++got[t.label];
    check(got == expected_tiles(scenario, usable),
          "make-tiles: label histogram matches the planted scenes (" + std::to_string(tiles.size()) + " tiles)");

    const auto report = stage_dark(rc, tracks, scenes, echo);
    std::set<std::string> dark_planted, dark_found;
    for (const auto& ev : scenario.truth) {
        if (ev.dark) dark_planted.insert(ev.scene_id);
    }
    for (const auto& v : report.verdicts) {
        if (v.is_dark) dark_found.insert(v.detection.scene_id);
    }
    check(report.dark_count == dark_planted.size() && dark_found == dark_planted,
          "dark-scan: " + std::to_string(report.dark_count) + " dark for " + std::to_string(dark_planted.size()) +
              " planted");

    std::cout << "e2e: " << (failures == 0 ? "ok" : std::to_string(failures) + " check(s) failed") << '\n';
    return failures == 0 ? kExitOk : kExitAssertion;
}

// Config file: "key = value" lines, '#' comments. Each key becomes a flag
// placed ahead of the command-line flags so that the latter win.
std::vector<std::string> config_args(const std::string& path) {
    const std::string text = csv::read_file(path);
    std::vector<std::string> out;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = csv::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(Errc::ConfigInvalid, path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(csv::trim(line.substr(0, eq)));
        std::string value(csv::trim(line.substr(eq + 1)));
        if (key.empty()) throw Error(Errc::ConfigInvalid, path + ":" + std::to_string(line_no) + ": empty key");
        if (key.rfind("--", 0) != 0) key = "--" + key;
        out.push_back(key + "=" + value);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ship-to-ship transfer detection from AIS tracks and satellite scene metadata"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RunConfig rc;
    std::string config_path;

    auto* ingest = app.add_subcommand("ingest", "normalize NMEA and/or CSV positions into tracks");
    ingest->add_option("--positions", rc.positions, "positions CSV");
    ingest->add_option("--nmea", rc.nmea, "NMEA log with reception times")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    ingest->add_option("--registry", rc.registry, "vessel registry CSV");

    auto* detect = app.add_subcommand("detect-sts", "find loitering pairs in tracks");
    detect->add_option("--positions", rc.positions, "positions CSV")->required();
    detect->add_option("--registry", rc.registry, "vessel registry CSV");
    add_sts_options(detect, rc);

    auto* tiles = app.add_subcommand("make-tiles", "cross-reference tracks with scenes and cut tiles");
    tiles->add_option("--positions", rc.positions, "positions CSV")->required();
    tiles->add_option("--registry", rc.registry, "vessel registry CSV");
    tiles->add_option("--scenes", rc.scenes, "scene metadata CSV")->required();
    tiles->add_option("--events", rc.events, "sts_events.csv; detected from the tracks when omitted");
    add_sts_options(tiles, rc);
    add_scene_options(tiles, rc);

    auto* darkscan = app.add_subcommand("dark-scan", "audit STS detections against AIS presence");
    darkscan->add_option("--detections", rc.detections, "detections CSV")->required();
    darkscan->add_option("--scenes", rc.scenes, "scene metadata CSV")->required();
    darkscan->add_option("--positions", rc.positions, "positions CSV")->required();
    darkscan->add_option("--registry", rc.registry, "vessel registry CSV");
    add_audit_options(darkscan, rc);

    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic scenario directory");
    add_synth_options(synth_cmd, rc);
    add_sts_options(synth_cmd, rc);
    add_audit_options(synth_cmd, rc);

    auto* e2e = app.add_subcommand("e2e", "synthesize a scenario, run every stage and check the planted truth");
    add_synth_options(e2e, rc);
    add_sts_options(e2e, rc);
    add_audit_options(e2e, rc);
    add_scene_options(e2e, rc);

    for (auto* sub : {ingest, detect, tiles, darkscan, synth_cmd, e2e}) {
        add_common_options(sub, rc);
        sub->add_option("--config", config_path, "key = value file; flags override it");
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        // pull the config file in ahead of the flags that override it
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size()) {
                path = args[i + 1];
            } else if (args[i].rfind("--config=", 0) == 0) {
                path = args[i].substr(9);
            }
            if (!path.empty() && !args.empty()) {
                const auto extra = config_args(path);
                args.insert(args.begin() + 1, extra.begin(), extra.end());
                break;
            }
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: ConfigInvalid: " << e.what() << '\n';
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return kExitError;
    }

    try {
        rc.finalize();
        g_verbose = rc.verbose;
        CLI::App* sub = app.get_subcommands().front();
        const auto echo = echo_of(sub);
        if (sub == ingest) return run_ingest(rc, echo);
        if (sub == synth_cmd) return run_synth(rc, echo);
        if (sub == e2e) return run_e2e(rc, echo);

        const auto tracks = load_tracks(rc);
        if (sub == detect) {
            const auto events = stage_detect(rc, tracks, echo);
            write_run_config(rc.out, echo);
            std::cout << "detect-sts: " << events.size() << " events\n";
            return kExitOk;
        }
        const auto scenes = load_scenes(rc.scenes);
        if (sub == tiles) {
            std::vector<sts::StsEvent> events;
            if (!rc.events.empty()) {
                events = sts::parse_events_csv(csv::read_file(rc.events));
            } else {
                events = sts::detect_sts(tracks, rc.sts, rc.workers);
            }
            const auto t = stage_tiles(rc, tracks, scenes, events);
            write_run_config(rc.out, echo);
            std::cout << "make-tiles: " << t.size() << " tiles\n";
            return kExitOk;
        }
        const auto report = stage_dark(rc, tracks, scenes, echo);
        write_run_config(rc.out, echo);
        std::cout << "dark-scan: " << report.dark_count << " dark of " << report.sts_detections
                  << " STS detections\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: IoFailure: " << e.what() << '\n';
        return kExitError;
    }
}
