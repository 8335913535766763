#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "state_io.hpp"

int main(int argc, char **argv) {
    entdex::Limits limits;
    try {
        limits = entdex::cli::limits_from_env(std::getenv(entdex::cli::kMaxQubitsEnv));
    } catch (const entdex::cli::CliError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    }
    std::vector<std::string> args(argv + 1, argv + argc);
    return entdex::cli::run(args, std::cout, std::cerr, limits);
}
