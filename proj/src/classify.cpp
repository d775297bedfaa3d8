#include "darksts/classify.hpp"

namespace darksts::classify {

ShipClass classify_vessel(ais::CargoFamily family, double dwt) noexcept {
    if (family == ais::CargoFamily::Other || dwt == 0.0) {
        return ShipClass::Unknown;
    }
    // "up to" is inclusive, "exceeding" is strict
    if (family == ais::CargoFamily::Dry) {
        if (dwt <= kSmallCarrierMaxDwt) return ShipClass::GeneralCargo;
        if (dwt > kBulkCarrierMinDwt) return ShipClass::BulkCarrier;
        return ShipClass::OtherDry;
    }
    if (dwt <= kSmallCarrierMaxDwt) return ShipClass::Tanker;
    if (dwt > kVlccMinDwt) return ShipClass::VLCC;
    return ShipClass::OtherLiquid;
}

bool is_dry(ShipClass c) noexcept {
    return c == ShipClass::GeneralCargo || c == ShipClass::BulkCarrier || c == ShipClass::OtherDry;
}

bool is_liquid(ShipClass c) noexcept {
    return c == ShipClass::Tanker || c == ShipClass::VLCC || c == ShipClass::OtherLiquid;
}

StsClass classify_sts(ShipClass a, ShipClass b) noexcept {
    if (is_dry(a) && is_dry(b)) return StsClass::StsCargo;
    if (is_liquid(a) && is_liquid(b)) return StsClass::StsTanker;
    return StsClass::StsMixed;
}

std::optional<TileLabel> label_for(ShipClass c) noexcept {
    switch (c) {
        case ShipClass::GeneralCargo: return TileLabel::GeneralCargo;
        case ShipClass::BulkCarrier: return TileLabel::BulkCarrier;
        case ShipClass::Tanker: return TileLabel::Tanker;
        case ShipClass::VLCC: return TileLabel::VLCC;
        default: return std::nullopt;
    }
}

std::optional<TileLabel> label_for(StsClass c) noexcept {
    switch (c) {
        case StsClass::StsCargo: return TileLabel::CargoSts;
        case StsClass::StsTanker: return TileLabel::StsTanker;
        default: return std::nullopt;
    }
}

bool is_sts_label(TileLabel l) noexcept {
    return l == TileLabel::CargoSts || l == TileLabel::StsTanker;
}

std::string_view to_string(TileLabel l) noexcept {
    switch (l) {
        case TileLabel::GeneralCargo: return "General Cargo";
        case TileLabel::BulkCarrier: return "Bulk Carrier";
        case TileLabel::CargoSts: return "Cargo STS";
        case TileLabel::Tanker: return "Tanker";
        case TileLabel::StsTanker: return "STS Tanker";
        case TileLabel::VLCC: return "VLCC";
    }
    return "";
}

std::optional<TileLabel> parse_label(std::string_view s) noexcept {
    for (auto l : kAllLabels) {
        if (to_string(l) == s) {
            return l;
        }
    }
    return std::nullopt;
}

std::string_view to_string(ShipClass c) noexcept {
    switch (c) {
        case ShipClass::GeneralCargo: return "General Cargo";
        case ShipClass::BulkCarrier: return "Bulk Carrier";
        case ShipClass::Tanker: return "Tanker";
        case ShipClass::VLCC: return "VLCC";
        case ShipClass::OtherDry: return "Other Dry";
        case ShipClass::OtherLiquid: return "Other Liquid";
        case ShipClass::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string_view to_string(StsClass c) noexcept {
    switch (c) {
        case StsClass::StsCargo: return "Cargo STS";
        case StsClass::StsTanker: return "STS Tanker";
        case StsClass::StsMixed: return "Mixed STS";
    }
    return "Mixed STS";
}

std::optional<StsClass> parse_sts_class(std::string_view s) noexcept {
    for (auto c : {StsClass::StsCargo, StsClass::StsTanker, StsClass::StsMixed}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace darksts::classify
