#include "entdex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "entdex/construct.hpp"

namespace entdex {

namespace {

constexpr double kPruneProbability = 1e-12;
constexpr double kMonotoneSlack = 1e-9;

std::string join_ints(const std::vector<int> &v) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

struct RandomCase {
    GhzProduct product;
    std::string description;
};

// Random partition of n, random qubit permutation, random local dressing.
RandomCase random_dressed_product(int n, SeededRng &rng, const Limits &limits) {
    const auto shapes = enumerate_partitions(n, Limits{limits.max_qubits, std::max(n, limits.max_partition_n)});
    const auto &shape = shapes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(shapes.size()) - 1))];
    auto perm = rng.permutation(n);
    const std::uint64_t lu_seed = rng.next();
    std::string desc = "shape " + to_string(shape) + " perm " + join_ints(perm) + " lu_seed " + std::to_string(lu_seed);
    auto product = ghz_product(DressedProductSpec{shape, std::nullopt, lu_seed, std::move(perm)}, limits);
    return {std::move(product), std::move(desc)};
}

struct CaseResult {
    double deviation;
    bool failed;
    std::string detail;
};

CaseResult separable_case(SeededRng &rng, const SuiteConfig &cfg) {
    const int n = rng.uniform_int(1, cfg.max_n);
    const std::uint64_t seed = rng.next();
    const auto psi = apply_local_unitary(basis_state(std::vector<int>(static_cast<std::size_t>(n), 0), cfg.limits),
                                         random_local_unitary(n, seed));
    const int e = entanglement_index(psi, cfg.tol).value;
    return {static_cast<double>(e), e != 0,
            "n " + std::to_string(n) + " lu_seed " + std::to_string(seed) + ": E=" + std::to_string(e)};
}

CaseResult local_unitary_case(SeededRng &rng, const SuiteConfig &cfg) {
    const int n = rng.uniform_int(2, cfg.max_n);
    const auto c = random_dressed_product(n, rng, cfg.limits);
    const std::uint64_t u_seed = rng.next();
    const auto before = classify(c.product.state, cfg.tol);
    const auto after = classify(apply_local_unitary(c.product.state, random_local_unitary(n, u_seed)), cfg.tol);
    double dev = std::abs(before.index.value - after.index.value);
    const bool same_blocks = before.blocks == after.blocks && before.shape == after.shape;
    if (!same_blocks) dev = std::max(dev, 1.0);
    return {dev, dev != 0.0,
            c.description + " u_seed " + std::to_string(u_seed) + ": " + to_string(before.blocks) + " -> " +
                to_string(after.blocks)};
}

CaseResult measurement_case(SeededRng &rng, const SuiteConfig &cfg) {
    const int n = rng.uniform_int(2, cfg.max_n);
    const auto c = random_dressed_product(n, rng, cfg.limits);
    const int q = rng.uniform_int(0, n - 1);
    const int e = entanglement_index(c.product.state, cfg.tol).value;
    double worst = 0.0;
    std::string detail = c.description + " qubit " + std::to_string(q) + ": E=" + std::to_string(e);
    for (Basis b : {Basis::Z, Basis::X}) {
        const double after = expected_index_after(c.product.state, q, b, cfg.tol);
        worst = std::max(worst, after - e);
        detail += std::string(" ") + std::string(to_string(b)) + "->" + std::to_string(after);
    }
    return {std::max(worst, 0.0), worst > kMonotoneSlack, detail};
}

CaseResult additivity_case(SeededRng &rng, const SuiteConfig &cfg) {
    const int n = rng.uniform_int(2, cfg.max_n);
    const int n1 = rng.uniform_int(1, n - 1);
    const auto a = random_dressed_product(n1, rng, cfg.limits);
    const auto b = random_dressed_product(n - n1, rng, cfg.limits);
    const int ea = entanglement_index(a.product.state, cfg.tol).value;
    const int eb = entanglement_index(b.product.state, cfg.tol).value;
    const int ab = entanglement_index(tensor(a.product.state, b.product.state, cfg.limits), cfg.tol).value;
    const double dev = std::abs(ab - (ea + eb));
    return {dev, dev != 0.0,
            "(" + a.description + ") x (" + b.description + "): " + std::to_string(ab) + " vs " +
                std::to_string(ea) + "+" + std::to_string(eb)};
}

}  // namespace

Basis parse_basis(std::string_view tag) {
    if (tag == "Z" || tag == "z") return Basis::Z;
    if (tag == "X" || tag == "x") return Basis::X;
    throw InvalidInput("invalid measurement basis '" + std::string(tag) + "'");
}

std::string_view to_string(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

std::vector<MeasurementOutcome> measure_qubit(const PureState &psi, int qubit, Basis basis) {
    const int n = psi.n_qubits();
    if (qubit < 0 || qubit >= n) throw InvalidInput("qubit index out of range");
    const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
    std::vector<MeasurementOutcome> out;
    for (int outcome = 0; outcome < 2; ++outcome) {
        std::vector<Complex> post(psi.dimension(), 0.0);
        double p = 0.0;
        for (std::size_t x = 0; x < psi.dimension(); ++x) {
            if (x & stride) continue;
            const Complex a0 = psi[x];
            const Complex a1 = psi[x | stride];
            if (basis == Basis::Z) {
                const Complex c = outcome == 0 ? a0 : a1;
                (outcome == 0 ? post[x] : post[x | stride]) = c;
                p += std::norm(c);
            } else {
                // <+-| on the qubit, then |+-> put back.
                const double sign = outcome == 0 ? 1.0 : -1.0;
                const Complex c = (a0 + sign * a1) / std::numbers::sqrt2;
                post[x] = c / std::numbers::sqrt2;
                post[x | stride] = sign * c / std::numbers::sqrt2;
                p += std::norm(c);
            }
        }
        if (p < kPruneProbability) continue;
        out.push_back({p, PureState::normalized(n, std::move(post))});
    }
    return out;
}

double expected_index_after(const PureState &psi, int qubit, Basis basis, double tol) {
    double total = 0.0;
    for (const auto &o : measure_qubit(psi, qubit, basis)) {
        total += o.probability * entanglement_index(o.post_state, tol).value;
    }
    return total;
}

PropertyReport run_property_suite(int property_id, const SuiteConfig &config) {
    if (property_id < 1 || property_id > 4) {
        throw InvalidInput("property id " + std::to_string(property_id) + " outside 1..4");
    }
    if (config.max_n < 2 || config.max_n > config.limits.max_qubits) {
        throw InvalidInput("max_n " + std::to_string(config.max_n) + " outside [2, " +
                           std::to_string(config.limits.max_qubits) + "]");
    }
    if (config.trials < 0) throw InvalidInput("trials must be non-negative");

    PropertyReport report;
    report.property_id = property_id;
    SeededRng master(config.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(property_id));
    for (int trial = 0; trial < config.trials; ++trial) {
        // One independent stream per trial.
        SeededRng rng(master.next());
        CaseResult r{};
        try {
            switch (property_id) {
            case 1: r = separable_case(rng, config); break;
            case 2: r = local_unitary_case(rng, config); break;
            case 3: r = measurement_case(rng, config); break;
            default: r = additivity_case(rng, config); break;
            }
        } catch (const std::exception &e) {
            r = {static_cast<double>(config.max_n), true, std::string("error: ") + e.what()};
        }
        ++report.cases_run;
        report.max_deviation = std::max(report.max_deviation, r.deviation);
        if (r.failed) report.failures.push_back("trial " + std::to_string(trial) + ": " + r.detail);
    }
    return report;
}

GhzEprReport ghz_epr_arithmetic(int max_m, double tol, const Limits &limits) {
    if (max_m < 2 || max_m > limits.max_qubits) {
        throw InvalidInput("max_m " + std::to_string(max_m) + " outside [2, " + std::to_string(limits.max_qubits) +
                           "]");
    }
    GhzEprReport report;
    const int epr = entanglement_index(ghz(2, limits), tol).value;
    for (int m = 2; m <= max_m; ++m) {
        const int e = entanglement_index(ghz(m, limits), tol).value;
        const int expected = (m - 1) * epr;
        report.rows.push_back({m, e, expected});
        report.ok = report.ok && e == expected;
    }
    return report;
}

}  // namespace entdex
