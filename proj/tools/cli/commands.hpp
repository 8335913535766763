#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "entdex/statecore.hpp"

namespace entdex::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;           // write failure (make), norm defect (classify, index)
inline constexpr int kExitFactorization = 3;
inline constexpr int kExitPropertyFailed = 4;

inline constexpr const char *kMaxQubitsEnv = "ENTDEX_MAX_QUBITS";

/// Limits with max_qubits taken from the environment value, if set.
/// Throws CliError(1) unless the value is an integer in [2, 20].
Limits limits_from_env(const char *value);

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Limits &limits);

}  // namespace entdex::cli
