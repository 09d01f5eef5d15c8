#include "cli.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> seed_env;
    if (const char* v = std::getenv("RISKMAP_SEED")) seed_env = v;
    return riskmap::cli::run(args, std::cout, std::cerr, seed_env);
}
