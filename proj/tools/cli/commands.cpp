#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "entdex/classify.hpp"
#include "entdex/construct.hpp"
#include "entdex/partitions.hpp"
#include "entdex/verify.hpp"
#include "state_io.hpp"

namespace entdex::cli {

namespace {

std::optional<long long> parse_integer(std::string_view text) {
    long long v = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
    return v;
}

std::vector<int> parse_int_list(const std::string &text, const std::string &what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto v = parse_integer(token);
        if (!v || *v < -1000000 || *v > 1000000) throw CliError(kExitInvalid, "invalid " + what + ": '" + text + "'");
        out.push_back(static_cast<int>(*v));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

Json to_json(const QubitSet &s) { return Json(s.members()); }

Json to_json(const SetPartition &sp) {
    Json blocks = Json::array();
    for (const auto &b : sp.blocks()) blocks.push_back(to_json(b));
    return blocks;
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string render_blocks(const SetPartition &sp) {
    std::string s;
    for (const auto &b : sp.blocks()) s += (s.empty() ? "" : " ") + to_string(b);
    return s;
}

// -- partitions --------------------------------------------------------------

int cmd_partitions(int n, bool counts, bool json, std::ostream &out, const Limits &limits) {
    if (counts) {
        const auto c = partition_count(n, limits);
        if (json) {
            Json doc;
            doc["format_version"] = kFormatVersion;
            doc["n"] = n;
            doc["count"] = c;
            out << doc.dump(2) << '\n';
        } else {
            out << c << '\n';
        }
        return kExitOk;
    }
    const auto all = enumerate_partitions(n, limits);
    if (json) {
        Json rows = Json::array();
        for (const auto &p : all) {
            Json row;
            row["parts"] = p.parts();
            row["p"] = p.num_parts();
            row["E"] = index_of(p).value;
            rows.push_back(std::move(row));
        }
        Json doc;
        doc["format_version"] = kFormatVersion;
        doc["n"] = n;
        doc["count"] = all.size();
        doc["partitions"] = std::move(rows);
        out << doc.dump(2) << '\n';
    } else {
        for (const auto &p : all) {
            out << to_string(p) << "  p=" << p.num_parts() << "  E=" << index_of(p).value << '\n';
        }
    }
    return kExitOk;
}

// -- make --------------------------------------------------------------------

struct MakeArgs {
    std::string partition;
    std::string assign;
    std::optional<std::uint64_t> lu_seed;
    std::string perm;
    std::string output;
};

int cmd_make(const MakeArgs &args, std::ostream &out, const Limits &limits) {
    std::vector<int> parts = parse_int_list(args.partition, "partition");
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::optional<IntegerPartition> shape;
    try {
        shape.emplace(std::move(parts));
    } catch (const InvalidInput &e) {
        throw CliError(kExitInvalid, std::string("invalid partition: ") + e.what());
    }
    const int n = shape->total();
    if (n > limits.max_qubits) {
        throw CliError(kExitInvalid, "partition of " + std::to_string(n) + " exceeds qubit cap " +
                                         std::to_string(limits.max_qubits));
    }

    DressedProductSpec spec{*shape, std::nullopt, args.lu_seed, std::nullopt};
    try {
        if (!args.assign.empty()) {
            std::vector<QubitSet> blocks;
            std::size_t start = 0;
            while (start <= args.assign.size()) {
                const auto slash = args.assign.find('/', start);
                auto members = parse_int_list(args.assign.substr(start, slash == std::string::npos ? std::string::npos
                                                                                                    : slash - start),
                                              "assignment");
                std::sort(members.begin(), members.end());
                blocks.emplace_back(std::move(members));
                if (slash == std::string::npos) break;
                start = slash + 1;
            }
            spec.assignment.emplace(std::move(blocks), n);
        }
        if (!args.perm.empty()) {
            auto perm = parse_int_list(args.perm, "permutation");
            check_permutation(perm, n);
            spec.perm = std::move(perm);
        }
    } catch (const InvalidInput &e) {
        throw CliError(kExitInvalid, e.what());
    }

    const auto product = [&] {
        try {
            return ghz_product(spec, limits);
        } catch (const InvalidInput &e) {
            throw CliError(kExitInvalid, e.what());
        } catch (const CapExceeded &e) {
            throw CliError(kExitInvalid, e.what());
        }
    }();

    write_json_file(args.output, state_to_json(product.state));

    const IntegerPartition truth_shape = shape_of(product.blocks);
    Json truth;
    truth["format_version"] = kFormatVersion;
    truth["n"] = n;
    truth["blocks"] = to_json(product.blocks);
    truth["shape"] = truth_shape.parts();
    truth["p"] = truth_shape.num_parts();
    truth["expected_E"] = index_of(truth_shape).value;
    if (args.lu_seed) truth["lu_seed"] = *args.lu_seed;
    if (spec.perm) truth["perm"] = *spec.perm;
    const auto truth_file = truth_path_for(args.output);
    write_json_file(truth_file, truth);

    out << "wrote " << args.output << " (n=" << n << ", expected E=" << index_of(truth_shape).value << ")\n";
    out << "wrote " << truth_file << '\n';
    return kExitOk;
}

// -- classify ----------------------------------------------------------------

int cmd_classify(const std::string &path, double tol, bool json, std::ostream &out, std::ostream &err,
                 const Limits &limits) {
    auto loaded = state_from_json(read_json_file(path), limits);
    if (loaded.warning) err << "warning: " << *loaded.warning << '\n';
    ClassReport report = [&] {
        try {
            return classify(loaded.state, tol);
        } catch (const FactorizationError &e) {
            throw CliError(kExitFactorization, e.what());
        }
    }();
    for (const auto &w : report.warnings) err << "warning: " << w << '\n';

    if (json) {
        Json doc;
        doc["format_version"] = kFormatVersion;
        doc["n"] = loaded.state.n_qubits();
        doc["blocks"] = to_json(report.blocks);
        doc["shape"] = report.shape.parts();
        doc["p"] = report.shape.num_parts();
        doc["E"] = report.index.value;
        doc["label"] = report.label;
        doc["tolerance_used"] = report.tolerance_used;
        doc["warnings"] = report.warnings;
        out << doc.dump(2) << '\n';
    } else {
        out << "blocks: " << render_blocks(report.blocks) << '\n';
        out << "shape=" << to_string(report.shape) << " p=" << report.shape.num_parts() << " E=" << report.index.value
            << '\n';
        if (report.index.value == 0) {
            out << "fully separable, E=0\n";
        } else {
            out << report.label << '\n';
        }
    }
    return kExitOk;
}

// -- index -------------------------------------------------------------------

int cmd_index(const std::string &path, double tol, bool json, std::ostream &out, std::ostream &err,
              const Limits &limits) {
    auto loaded = ensemble_from_json(read_json_file(path), limits);
    for (const auto &w : loaded.warnings) err << "warning: " << w << '\n';
    const double e = [&] {
        try {
            return ensemble_index(loaded.ensemble, tol);
        } catch (const FactorizationError &ex) {
            throw CliError(kExitFactorization, ex.what());
        }
    }();
    if (json) {
        Json doc;
        doc["format_version"] = kFormatVersion;
        doc["n"] = loaded.ensemble.n_qubits();
        doc["terms"] = loaded.ensemble.terms().size();
        doc["E"] = e;
        out << doc.dump(2) << '\n';
    } else {
        out << format_real(e) << '\n';
    }
    return kExitOk;
}

// -- verify ------------------------------------------------------------------

int cmd_verify(const std::string &suite, const SuiteConfig &config, bool json, std::ostream &out,
               const Limits &limits) {
    std::vector<int> ids;
    if (suite == "all") {
        ids = {1, 2, 3, 4};
    } else {
        const auto v = parse_integer(suite);
        if (!v || *v < 1 || *v > 4) throw CliError(kExitInvalid, "invalid suite '" + suite + "' (expected 1-4 or all)");
        ids = {static_cast<int>(*v)};
    }
    if (config.max_n < 2 || config.max_n > limits.max_qubits) {
        throw CliError(kExitInvalid, "--max-n must lie in [2, " + std::to_string(limits.max_qubits) + "]");
    }
    if (config.trials < 1) throw CliError(kExitInvalid, "--trials must be positive");

    std::vector<PropertyReport> reports;
    for (int id : ids) reports.push_back(run_property_suite(id, config));
    bool all_ok = true;
    for (const auto &r : reports) all_ok = all_ok && r.failures.empty();

    if (json) {
        Json arr = Json::array();
        for (const auto &r : reports) {
            Json j;
            j["property_id"] = r.property_id;
            j["cases_run"] = r.cases_run;
            j["failures"] = r.failures;
            j["max_deviation"] = r.max_deviation;
            arr.push_back(std::move(j));
        }
        Json doc;
        doc["format_version"] = kFormatVersion;
        doc["max_n"] = config.max_n;
        doc["trials"] = config.trials;
        doc["seed"] = config.seed;
        doc["passed"] = all_ok;
        doc["reports"] = std::move(arr);
        out << doc.dump(2) << '\n';
    } else {
        for (const auto &r : reports) {
            out << "property " << r.property_id << ": cases=" << r.cases_run << " failures=" << r.failures.size()
                << " max_deviation=" << format_real(r.max_deviation) << '\n';
            for (const auto &f : r.failures) out << "  " << f << '\n';
        }
    }
    return all_ok ? kExitOk : kExitPropertyFailed;
}

}  // namespace

Limits limits_from_env(const char *value) {
    Limits limits;
    if (value == nullptr) return limits;
    const auto v = parse_integer(value);
    if (!v || *v < 2 || *v > kHardQubitCeiling) {
        throw CliError(kExitInvalid, std::string(kMaxQubitsEnv) + " must be an integer in [2, " +
                                         std::to_string(kHardQubitCeiling) + "], got '" + value + "'");
    }
    limits.max_qubits = static_cast<int>(*v);
    return limits;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const Limits &limits) {
    CLI::App app{"entdex: N-qubit entanglement classification by tensor-factor structure", "entdex"};
    app.require_subcommand(1);

    int part_n = 0;
    bool part_counts = false;
    bool part_json = false;
    auto *partitions = app.add_subcommand("partitions", "List the partitions of n with p and E per row");
    partitions->add_option("n", part_n, "Positive integer to partition")->required();
    partitions->add_flag("--counts", part_counts, "Print only the partition count p(n)");
    partitions->add_flag("--json", part_json, "Emit JSON");

    MakeArgs make_args;
    std::uint64_t lu_seed = 0;
    auto *make = app.add_subcommand("make", "Write a GHZ-block product state and its ground-truth sidecar");
    make->add_option("--partition", make_args.partition, "Block sizes, e.g. 3,2")->required();
    make->add_option("--assign", make_args.assign, "Qubits per block, e.g. 0,2,4/1,3");
    auto *seed_opt = make->add_option("--lu-seed", lu_seed, "Seed for a random local-unitary dressing");
    make->add_option("--perm", make_args.perm, "Qubit permutation: qubit i moves to position perm[i]");
    make->add_option("-o,--output", make_args.output, "Output state file")->required();

    std::string classify_file;
    double classify_tol = kDefaultTolerance;
    bool classify_json = false;
    auto *classify_cmd = app.add_subcommand("classify", "Recover blocks, shape and index E of a state file");
    classify_cmd->add_option("file", classify_file, "State file")->required();
    classify_cmd->add_option("--tol", classify_tol, "Purity tolerance");
    classify_cmd->add_flag("--json", classify_json, "Emit the full report as JSON");

    std::string ensemble_file;
    double index_tol = kDefaultTolerance;
    bool index_json = false;
    auto *index = app.add_subcommand("index", "Ensemble-averaged entanglement index");
    index->add_option("--ensemble", ensemble_file, "Ensemble file")->required();
    index->add_option("--tol", index_tol, "Purity tolerance for state terms");
    index->add_flag("--json", index_json, "Emit JSON");

    std::string suite = "all";
    SuiteConfig config;
    config.limits = limits;
    bool verify_json = false;
    auto *verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--suite", suite, "1, 2, 3, 4 or all");
    verify->add_option("--max-n", config.max_n, "Largest qubit count drawn");
    verify->add_option("--trials", config.trials, "Cases per suite");
    verify->add_option("--seed", config.seed, "Generator seed");
    verify->add_flag("--json", verify_json, "Emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (partitions->parsed()) return cmd_partitions(part_n, part_counts, part_json, out, limits);
        if (make->parsed()) {
            if (seed_opt->count() > 0) make_args.lu_seed = lu_seed;
            return cmd_make(make_args, out, limits);
        }
        if (classify_cmd->parsed()) {
            if (!(classify_tol > 0.0 && classify_tol < 1.0)) throw CliError(kExitInvalid, "--tol must lie in (0, 1)");
            return cmd_classify(classify_file, classify_tol, classify_json, out, err, limits);
        }
        if (index->parsed()) {
            if (!(index_tol > 0.0 && index_tol < 1.0)) throw CliError(kExitInvalid, "--tol must lie in (0, 1)");
            return cmd_index(ensemble_file, index_tol, index_json, out, err, limits);
        }
        if (verify->parsed()) return cmd_verify(suite, config, verify_json, out, limits);
    } catch (const CliError &e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::length_error &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace entdex::cli
