#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace riskmap {

/// Architectural stratum of a humanoid platform, bottom (P) to top (SI).
enum class LayerId : std::size_t {
    P = 0,   // Physical
    SP = 1,  // Sensing and Perception
    DP = 2,  // Data Processing
    MW = 3,  // Middleware
    DM = 4,  // Decision-Making
    AP = 5,  // Application
    SI = 6,  // Social Interface
};

inline constexpr std::size_t kLayerCount = 7;

inline constexpr std::array<LayerId, kLayerCount> kAllLayers = {
    LayerId::P, LayerId::SP, LayerId::DP, LayerId::MW, LayerId::DM, LayerId::AP, LayerId::SI};

constexpr std::size_t ordinal(LayerId layer) noexcept { return static_cast<std::size_t>(layer); }

std::string_view layer_code(LayerId layer) noexcept;
std::string_view layer_display_name(LayerId layer) noexcept;
std::optional<LayerId> parse_layer_code(std::string_view code) noexcept;

/// Layer ordinal ⇒ LayerId. Undefined for ordinals >= kLayerCount.
constexpr LayerId layer_from_ordinal(std::size_t index) noexcept { return kAllLayers[index]; }

/// Values keyed by layer ordinal.
template <typename T>
using PerLayer = std::array<T, kLayerCount>;

}  // namespace riskmap
