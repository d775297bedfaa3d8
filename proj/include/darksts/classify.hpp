#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "darksts/ais.hpp"

namespace darksts::classify {

enum class ShipClass { GeneralCargo, BulkCarrier, Tanker, VLCC, OtherDry, OtherLiquid, Unknown };

enum class StsClass { StsCargo, StsTanker, StsMixed };

/// The six labels of the training taxonomy.
enum class TileLabel { GeneralCargo, BulkCarrier, CargoSts, Tanker, StsTanker, VLCC };

inline constexpr std::array<TileLabel, 6> kAllLabels{TileLabel::GeneralCargo, TileLabel::BulkCarrier,
                                                     TileLabel::CargoSts,     TileLabel::Tanker,
                                                     TileLabel::StsTanker,    TileLabel::VLCC};

inline constexpr std::array<ShipClass, 7> kAllShipClasses{
    ShipClass::GeneralCargo, ShipClass::BulkCarrier, ShipClass::Tanker,  ShipClass::VLCC,
    ShipClass::OtherDry,     ShipClass::OtherLiquid, ShipClass::Unknown};

inline constexpr double kSmallCarrierMaxDwt = 6'000.0;
inline constexpr double kBulkCarrierMinDwt = 30'000.0;
inline constexpr double kVlccMinDwt = 100'000.0;

ShipClass classify_vessel(ais::CargoFamily family, double dwt) noexcept;
inline ShipClass classify_vessel(const ais::VesselRecord& v) noexcept {
    return classify_vessel(v.cargo_family, v.dwt);
}

StsClass classify_sts(ShipClass a, ShipClass b) noexcept;

bool is_dry(ShipClass c) noexcept;
bool is_liquid(ShipClass c) noexcept;

/// Taxonomy label for a lone vessel; nullopt for classes outside it.
std::optional<TileLabel> label_for(ShipClass c) noexcept;
/// Taxonomy label for an event; nullopt for StsMixed.
std::optional<TileLabel> label_for(StsClass c) noexcept;

bool is_sts_label(TileLabel l) noexcept;

std::string_view to_string(TileLabel l) noexcept;
std::optional<TileLabel> parse_label(std::string_view s) noexcept;

std::string_view to_string(ShipClass c) noexcept;
std::string_view to_string(StsClass c) noexcept;
std::optional<StsClass> parse_sts_class(std::string_view s) noexcept;

}  // namespace darksts::classify
