#include "state_io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <sstream>

namespace entdex::cli {

namespace {

[[noreturn]] void malformed(const std::string &what) { throw CliError(1, "malformed input: " + what); }

void check_header(const Json &doc) {
    if (!doc.is_object()) malformed("expected a JSON object");
    if (doc.contains("format_version")) {
        const auto &v = doc["format_version"];
        if (!v.is_number_integer() || v.get<int>() != kFormatVersion) malformed("unsupported format_version");
    }
}

int read_qubit_count(const Json &doc, const Limits &limits) {
    if (!doc.contains("n") || !doc["n"].is_number_integer()) malformed("missing integer field 'n'");
    const auto n = doc["n"].get<long long>();
    if (n < 1 || n > limits.max_qubits) {
        throw CliError(1, "n = " + std::to_string(n) + " outside [1, " + std::to_string(limits.max_qubits) + "]");
    }
    return static_cast<int>(n);
}

}  // namespace

Json state_to_json(const PureState &psi) {
    Json amps = Json::array();
    for (const auto &a : psi.amplitudes()) amps.push_back(Json::array({a.real(), a.imag()}));
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["bit_order"] = kBitOrder;
    doc["n"] = psi.n_qubits();
    doc["amplitudes"] = std::move(amps);
    return doc;
}

LoadedState state_from_json(const Json &doc, const Limits &limits) {
    check_header(doc);
    if (doc.contains("bit_order") && doc["bit_order"] != kBitOrder) {
        malformed("unsupported bit_order (expected \"" + std::string(kBitOrder) + "\")");
    }
    const int n = read_qubit_count(doc, limits);
    if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) malformed("missing array 'amplitudes'");
    const auto &arr = doc["amplitudes"];
    if (arr.size() != dimension_of(n)) {
        malformed("expected " + std::to_string(dimension_of(n)) + " amplitudes, found " + std::to_string(arr.size()));
    }
    std::vector<Complex> amps;
    amps.reserve(arr.size());
    for (const auto &pair : arr) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            malformed("amplitudes must be [re, im] numeric pairs");
        }
        const Complex a(pair[0].get<double>(), pair[1].get<double>());
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) malformed("non-finite amplitude");
        amps.push_back(a);
    }
    double sq = 0.0;
    for (const auto &a : amps) sq += std::norm(a);
    const double defect = std::abs(std::sqrt(sq) - 1.0);
    if (!(defect <= kMaxRenormDefect)) {
        throw CliError(2, "norm defect " + std::to_string(defect) + " exceeds " + std::to_string(kMaxRenormDefect));
    }
    std::optional<std::string> warning;
    if (defect > kSilentRenormDefect) warning = "renormalized state with norm defect " + std::to_string(defect);
    return {PureState::normalized(n, std::move(amps)), warning};
}

LoadedEnsemble ensemble_from_json(const Json &doc, const Limits &limits) {
    check_header(doc);
    const int n = read_qubit_count(doc, limits);
    if (!doc.contains("terms") || !doc["terms"].is_array() || doc["terms"].empty()) {
        malformed("missing nonempty array 'terms'");
    }
    std::vector<EnsembleTerm> terms;
    std::vector<std::string> warnings;
    double total = 0.0;
    for (const auto &t : doc["terms"]) {
        if (!t.is_object() || !t.contains("p") || !t["p"].is_number()) malformed("each term needs a numeric 'p'");
        const double p = t["p"].get<double>();
        if (!(p > 0.0 && p <= 1.0 + kEnsembleSumTolerance)) {
            throw CliError(1, "term probability " + std::to_string(p) + " outside (0, 1]");
        }
        const bool has_partition = t.contains("partition");
        const bool has_state = t.contains("state");
        if (has_partition == has_state) malformed("each term needs exactly one of 'partition' or 'state'");
        if (has_partition) {
            const auto &parts = t["partition"];
            if (!parts.is_array() || parts.empty()) malformed("'partition' must be a nonempty integer list");
            std::vector<int> v;
            for (const auto &x : parts) {
                if (!x.is_number_integer()) malformed("'partition' must be a nonempty integer list");
                v.push_back(x.get<int>());
            }
            std::sort(v.begin(), v.end(), std::greater<>());
            try {
                IntegerPartition partition(std::move(v));
                if (partition.total() != n) {
                    throw CliError(1, "partition " + to_string(partition) + " does not sum to n = " + std::to_string(n));
                }
                terms.push_back({p, std::move(partition)});
            } catch (const InvalidInput &e) {
                throw CliError(1, e.what());
            }
        } else {
            auto loaded = state_from_json(t["state"], limits);
            if (loaded.state.n_qubits() != n) {
                throw CliError(1, "state term has " + std::to_string(loaded.state.n_qubits()) + " qubits, expected " +
                                      std::to_string(n));
            }
            if (loaded.warning) warnings.push_back(*loaded.warning);
            terms.push_back({p, std::move(loaded.state)});
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kEnsembleSumTolerance) {
        throw CliError(1, "term probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    for (auto &t : terms) t.probability /= total;
    return {Ensemble(n, std::move(terms)), std::move(warnings)};
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw CliError(1, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error &e) {
        throw CliError(1, "malformed input: " + path + ": " + e.what());
    }
}

void write_json_file(const std::string &path, const Json &doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(2, "cannot write " + path);
    out << doc.dump(2) << '\n';
    out.flush();
    if (!out) throw CliError(2, "write failed for " + path);
}

std::string truth_path_for(const std::string &state_path) {
    const std::string ext = ".json";
    if (state_path.size() > ext.size() && state_path.compare(state_path.size() - ext.size(), ext.size(), ext) == 0) {
        return state_path.substr(0, state_path.size() - ext.size()) + ".truth.json";
    }
    return state_path + ".truth.json";
}

}  // namespace entdex::cli
