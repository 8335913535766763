#pragma once

// JSON file formats shared by the command-line front end.
//
// StateFile:
//   {"format_version": 1, "bit_order": "q0-most-significant",
//    "n": 2, "amplitudes": [[re, im], ...]}          // 2^n pairs
// EnsembleFile:
//   {"format_version": 1, "n": 4,
//    "terms": [{"p": 0.5, "partition": [2, 2]},
//              {"p": 0.5, "state": {<StateFile body>}}]}
//
// "format_version" and "bit_order" are optional on input and validated when
// present.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entdex/classify.hpp"
#include "entdex/statecore.hpp"

namespace entdex::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char *kBitOrder = "q0-most-significant";

// Load-time norm policy for state files.
inline constexpr double kSilentRenormDefect = 1e-6;
inline constexpr double kMaxRenormDefect = 1e-3;
// Ensemble probabilities must sum to 1 within this on load.
inline constexpr double kEnsembleSumTolerance = 1e-6;

/// Carries the process exit code alongside the diagnostic.
class CliError : public std::runtime_error {
  public:
    CliError(int exit_code, const std::string &message) : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

  private:
    int exit_code_;
};

struct LoadedState {
    PureState state;
    std::optional<std::string> warning;  // set when renormalized past the silent threshold
};

Json state_to_json(const PureState &psi);

/// Exit 1 on malformed input or a cap violation, exit 2 on a norm defect
/// above kMaxRenormDefect.
LoadedState state_from_json(const Json &doc, const Limits &limits);

struct LoadedEnsemble {
    Ensemble ensemble;
    std::vector<std::string> warnings;
};

/// Exit 1 on malformed input, probability-sum or shape violations.
LoadedEnsemble ensemble_from_json(const Json &doc, const Limits &limits);

/// Parses a file; exit 1 if it cannot be read or is not JSON.
Json read_json_file(const std::string &path);

/// Writes `doc` followed by a newline; exit 2 on failure.
void write_json_file(const std::string &path, const Json &doc);

/// "s.json" -> "s.truth.json"; other names get ".truth.json" appended.
std::string truth_path_for(const std::string &state_path);

}  // namespace entdex::cli
