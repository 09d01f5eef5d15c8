#include "riskmap/errors.hpp"

namespace riskmap {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out;
}

std::string bind_message(const std::vector<std::string>& missing, const std::vector<std::string>& extra,
                         const std::vector<std::string>& invalid) {
    std::string msg = "assessment does not bind to catalog";
    if (!missing.empty()) msg += "; missing: " + join(missing);
    if (!extra.empty()) msg += "; extra: " + join(extra);
    if (!invalid.empty()) msg += "; invalid: " + join(invalid);
    return msg;
}

}  // namespace

BindError::BindError(std::vector<std::string> missing, std::vector<std::string> extra,
                     std::vector<std::string> invalid)
    : Error(bind_message(missing, extra, invalid)),
      missing_(std::move(missing)),
      extra_(std::move(extra)),
      invalid_(std::move(invalid)) {}

}  // namespace riskmap
