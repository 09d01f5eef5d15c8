#include "riskmap/layer.hpp"

namespace riskmap {

namespace {

constexpr std::array<std::string_view, kLayerCount> kCodes = {"P", "SP", "DP", "MW", "DM", "AP", "SI"};
constexpr std::array<std::string_view, kLayerCount> kNames = {
    "Physical",        "Sensing and Perception", "Data Processing", "Middleware",
    "Decision-Making", "Application",            "Social Interface"};

}  // namespace

std::string_view layer_code(LayerId layer) noexcept { return kCodes[ordinal(layer)]; }

std::string_view layer_display_name(LayerId layer) noexcept { return kNames[ordinal(layer)]; }

std::optional<LayerId> parse_layer_code(std::string_view code) noexcept {
    for (std::size_t i = 0; i < kLayerCount; ++i) {
        if (kCodes[i] == code) return layer_from_ordinal(i);
    }
    return std::nullopt;
}

}  // namespace riskmap
