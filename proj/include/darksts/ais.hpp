#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darksts/geo.hpp"
#include "darksts/time.hpp"

namespace darksts::ais {

inline constexpr double kMaxSogKnots = 102.2;
inline constexpr double kMaxDraughtM = 30.0;

enum class CargoFamily { Dry, Liquid, Other };

std::string_view to_string(CargoFamily f) noexcept;
std::optional<CargoFamily> parse_cargo_family(std::string_view s) noexcept;

struct PositionFix {
    std::string vessel_id;
    Timestamp t;
    geo::GeoPoint pos;
    double sog = 0.0;                // knots
    std::optional<double> draught;  // meters

    friend bool operator==(const PositionFix&, const PositionFix&) = default;
};

/// Field-level validity: sog within [0, 102.2], draught (if any) in (0, 30].
bool is_valid_fix(const PositionFix& f) noexcept;

struct VesselRecord {
    std::string vessel_id;
    std::optional<std::uint32_t> imo;
    std::string name;
    double length = 0.0;  // meters
    double beam = 0.0;    // meters
    double dwt = 0.0;     // deadweight tons
    CargoFamily cargo_family = CargoFamily::Other;

    friend bool operator==(const VesselRecord&, const VesselRecord&) = default;
};

/// IMO check digit: the first six digits weighted 7..2, summed, mod 10,
/// equal the seventh digit.
bool valid_imo(std::uint32_t imo) noexcept;

/// Appends the check digit to a six-digit IMO stem.
std::uint32_t make_imo(std::uint32_t stem) noexcept;

bool is_valid_record(const VesselRecord& v) noexcept;

struct Track {
    VesselRecord vessel;
    bool unregistered = false;
    std::vector<PositionFix> fixes;  // sorted by t, unique timestamps

    friend bool operator==(const Track&, const Track&) = default;
};

struct PositionTable {
    std::vector<PositionFix> fixes;
    std::size_t rejected = 0;
};

/// Parses positions.csv content. Required columns: vessel_id, timestamp, lat,
/// lon, sog; draught is optional. Invalid rows are dropped and counted.
/// Throws Error{EmptyFile} when there is no header, Error{MissingColumn}.
PositionTable parse_position_table(std::string_view text);
PositionTable load_position_table(const std::filesystem::path& path);
std::string format_position_table(std::span<const PositionFix> fixes);

struct Registry {
    std::vector<VesselRecord> vessels;
    std::size_t rejected = 0;
};

/// Parses registry.csv: vessel_id,imo,name,length_m,beam_m,dwt,cargo_family.
Registry parse_registry(std::string_view text);
Registry load_registry(const std::filesystem::path& path);
std::string format_registry(std::span<const VesselRecord> vessels);

/// Groups fixes per vessel, sorts by time and keeps the first fix (in input
/// order) for each (vessel_id, t). Vessels missing from the registry get a
/// placeholder record (cargo family Other, dwt 0) and are flagged
/// unregistered. Tracks are returned in vessel_id order.
std::vector<Track> build_tracks(std::span<const PositionFix> fixes, std::span<const VesselRecord> registry);

}  // namespace darksts::ais
