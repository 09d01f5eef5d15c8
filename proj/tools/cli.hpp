#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace riskmap::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitUsage = 2,
    kExitComputation = 3,
};

/// `args` excludes the program name. `seed_env` is the value of RISKMAP_SEED, if set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& seed_env = std::nullopt);

}  // namespace riskmap::cli
