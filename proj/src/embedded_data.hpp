#pragma once

#include <string_view>

// Data files compiled into the library (see src/embedded_data.cpp.in).
namespace riskmap::embedded {

std::string_view default_catalog_json();
std::string_view report_schema_json();

}  // namespace riskmap::embedded
