#pragma once

#include <string_view>

namespace riskmap {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchemaVersion = "1";

}  // namespace riskmap
