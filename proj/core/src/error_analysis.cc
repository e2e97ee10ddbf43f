#include "magicfab/error_analysis.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "magicfab/pauli_frame.h"

namespace magicfab {

namespace {

// Branch policies a pattern is run under. Two seeded random walks back up the two extreme
// policies so a branch-dependent classification has several chances to show itself.
struct BranchPolicy {
    BranchMode mode;
    uint64_t seed;
};
constexpr BranchPolicy kPolicies[] = {
    {BranchMode::PreferZero, 0},
    {BranchMode::PreferOne, 0},
    {BranchMode::Random, 1},
    {BranchMode::Random, 2},
};

uint64_t next_same_weight(uint64_t v) {
    uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace

std::string_view error_class_name(ErrorClass c) {
    switch (c) {
        case ErrorClass::Detected:
            return "detected";
        case ErrorClass::UndetectedBenign:
            return "undetected_benign";
        case ErrorClass::UndetectedHarmful:
            return "undetected_harmful";
    }
    return "?";
}

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::StateVector:
            return "state-vector";
        case Backend::PauliFrame:
            return "pauli-frame";
        case Backend::Auto:
            return "auto";
    }
    return "?";
}

Backend backend_from_name(std::string_view name) {
    for (auto b : {Backend::StateVector, Backend::PauliFrame, Backend::Auto}) {
        if (backend_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

void WeightCounts::add(ErrorClass c) {
    switch (c) {
        case ErrorClass::Detected:
            detected++;
            break;
        case ErrorClass::UndetectedBenign:
            undetected_benign++;
            break;
        case ErrorClass::UndetectedHarmful:
            undetected_harmful++;
            break;
    }
}

std::vector<uint64_t> InjectionReport::branch_inconsistent() const {
    std::vector<uint64_t> out;
    for (const auto &p : patterns) {
        if (p.branch_inconsistent) {
            out.push_back(p.mask);
        }
    }
    return out;
}

std::vector<std::string> InjectionReport::labels(uint64_t mask) const {
    std::vector<std::string> out;
    for (size_t k = 0; k < sites.size(); k++) {
        if ((mask >> k) & 1) {
            out.push_back(sites[k]);
        }
    }
    return out;
}

double SuppressionModel::evaluate(double eps) const {
    return static_cast<double>(coefficient) * std::pow(eps, degree);
}

PatternClassifier::PatternClassifier(const Circuit &circuit, double harm_tolerance, Backend backend)
    : circuit_(circuit), harm_tolerance_(harm_tolerance), backend_(backend), sites_(circuit.injection_sites()) {
    circuit.validate();
    if (sites_.empty()) {
        throw std::invalid_argument(circuit.name + " has no injection sites");
    }
    if (sites_.size() > 63) {
        throw std::invalid_argument(circuit.name + " has too many injection sites for a 64-bit mask");
    }
    if (!circuit.reference.has_value()) {
        throw std::invalid_argument(circuit.name + " has no reference state");
    }
    if (!(harm_tolerance > 0 && harm_tolerance < 1)) {
        throw std::invalid_argument("harm tolerance must lie in (0, 1)");
    }
}

std::set<std::string> PatternClassifier::errors_for(uint64_t mask) const {
    if (mask >> sites_.size()) {
        throw std::invalid_argument("error mask names a site that does not exist");
    }
    std::set<std::string> errors;
    for (size_t k = 0; k < sites_.size(); k++) {
        if ((mask >> k) & 1) {
            errors.insert(sites_[k]);
        }
    }
    return errors;
}

ErrorClass PatternClassifier::from_fidelity(bool accepted, double fid) const {
    if (!accepted) {
        return ErrorClass::Detected;
    }
    return fid < 1 - harm_tolerance_ ? ErrorClass::UndetectedHarmful : ErrorClass::UndetectedBenign;
}

PatternResult PatternClassifier::classify_state_vector(uint64_t mask) const {
    RunOptions options;
    options.injected_errors = errors_for(mask);
    PatternResult result{mask};
    bool first = true;
    for (const auto &policy : kPolicies) {
        options.branch_mode = policy.mode;
        options.seed = policy.seed;
        RunOutcome out = run_circuit(circuit_, options);
        double fid = out.accepted ? output_fidelity(circuit_, out.state) : 1.0;
        ErrorClass cls = from_fidelity(out.accepted, fid);
        if (first) {
            result.cls = cls;
            first = false;
        } else if (cls != result.cls) {
            result.branch_inconsistent = true;
        }
        result.fidelity = std::min(result.fidelity, fid);
    }
    return result;
}

PatternResult PatternClassifier::classify_pauli_frame(uint64_t mask) const {
    FrameOutcome out = propagate_errors(circuit_, errors_for(mask));
    double fid = out.accepted ? out.fidelity : 1.0;
    return PatternResult{mask, from_fidelity(out.accepted, fid), fid, false};
}

PatternResult PatternClassifier::classify(uint64_t mask) {
    {
        std::lock_guard lock(cache_mutex_);
        auto it = cache_.find(mask);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    PatternResult r;
    switch (backend_) {
        case Backend::StateVector:
            r = classify_state_vector(mask);
            break;
        case Backend::PauliFrame:
            r = classify_pauli_frame(mask);
            break;
        case Backend::Auto:
            try {
                r = classify_pauli_frame(mask);
            } catch (const FrameUnsupported &) {
                r = classify_state_vector(mask);
            }
            break;
    }
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(mask, r);
    return r;
}

InjectionReport enumerate_errors(const Circuit &circuit, int max_weight, const EnumerateOptions &options) {
    PatternClassifier classifier(circuit, options.harm_tolerance, options.backend);
    const int n = static_cast<int>(classifier.sites().size());
    if (max_weight < 0 || max_weight > n) {
        throw std::invalid_argument("max weight must lie in [0, number of injection sites]");
    }

    std::vector<uint64_t> masks;
    for (int w = 0; w <= max_weight; w++) {
        if (w == 0) {
            masks.push_back(0);
            continue;
        }
        uint64_t end = uint64_t{1} << n;
        for (uint64_t m = (uint64_t{1} << w) - 1; m < end; m = next_same_weight(m)) {
            masks.push_back(m);
        }
    }

    std::vector<PatternResult> results(masks.size());
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(masks.size()));
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (size_t i = next++; i < masks.size(); i = next++) {
            try {
                results[i] = classifier.classify(masks[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    InjectionReport report;
    report.circuit = circuit.name;
    report.sites = classifier.sites();
    report.max_weight = max_weight;
    report.harm_tolerance = options.harm_tolerance;
    for (int w = 0; w <= max_weight; w++) {
        report.per_weight[w] = {};
    }
    for (const auto &r : results) {
        report.per_weight[std::popcount(r.mask)].add(r.cls);
    }
    for (const auto &[w, counts] : report.per_weight) {
        if (counts.undetected_harmful > 0) {
            report.leading_term = LeadingTerm{counts.undetected_harmful, w};
            break;
        }
    }
    report.patterns = std::move(results);
    return report;
}

SuppressionModel derive_suppression(const InjectionReport &report) {
    if (report.leading_term.has_value()) {
        return {report.leading_term->coefficient, report.leading_term->degree};
    }
    for (const auto &[w, counts] : report.per_weight) {
        if (counts.undetected_harmful > 0) {
            return {counts.undetected_harmful, w};
        }
    }
    throw std::domain_error("no undetected harmful pattern up to weight " + std::to_string(report.max_weight));
}

RatePrediction predict_rates(const InjectionReport &report, double eps) {
    const int n = static_cast<int>(report.num_sites());
    RatePrediction p;
    for (const auto &[w, counts] : report.per_weight) {
        double weight_prob = std::pow(eps, w) * std::pow(1 - eps, n - w);
        p.rejection += counts.detected * weight_prob;
        p.harmful_accept += counts.undetected_harmful * weight_prob;
        p.accept += (counts.undetected_benign + counts.undetected_harmful) * weight_prob;
    }
    return p;
}

MonteCarloResult monte_carlo_validate(PatternClassifier &classifier, double eps, uint64_t trials, uint64_t seed) {
    if (!(eps >= 0 && eps <= 0.1)) {
        throw std::invalid_argument("error probability must lie in [0, 0.1]");
    }
    if (trials == 0) {
        throw std::invalid_argument("need at least one trial");
    }
    const size_t n = classifier.sites().size();
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution flip(eps);
    uint64_t rejected = 0;
    uint64_t harmful = 0;
    for (uint64_t t = 0; t < trials; t++) {
        uint64_t mask = 0;
        for (size_t k = 0; k < n; k++) {
            if (flip(rng)) {
                mask |= uint64_t{1} << k;
            }
        }
        ErrorClass cls = classifier.classify(mask).cls;
        rejected += cls == ErrorClass::Detected;
        harmful += cls == ErrorClass::UndetectedHarmful;
    }
    MonteCarloResult r;
    r.trials = trials;
    double nt = static_cast<double>(trials);
    r.rejection_rate = rejected / nt;
    r.rejection_stderr = std::sqrt(r.rejection_rate * (1 - r.rejection_rate) / nt);
    r.harmful_accept_rate = harmful / nt;
    r.harmful_stderr = std::sqrt(r.harmful_accept_rate * (1 - r.harmful_accept_rate) / nt);
    uint64_t accepted = trials - rejected;
    r.output_error_rate = accepted ? static_cast<double>(harmful) / accepted : 0.0;
    return r;
}

MonteCarloResult monte_carlo_validate(
    const Circuit &circuit, double eps, uint64_t trials, uint64_t seed, double harm_tolerance) {
    PatternClassifier classifier(circuit, harm_tolerance, Backend::Auto);
    return monte_carlo_validate(classifier, eps, trials, seed);
}

std::string report_table(const InjectionReport &report) {
    std::ostringstream out;
    out << "circuit " << report.circuit << ", " << report.num_sites() << " injection sites\n";
    out << "weight  patterns  detected  benign  harmful\n";
    for (const auto &[w, c] : report.per_weight) {
        char line[96];
        std::snprintf(
            line, sizeof(line), "%6d  %8.0f  %8llu  %6llu  %7llu\n", w, binomial(static_cast<int>(report.num_sites()), w),
            static_cast<unsigned long long>(c.detected), static_cast<unsigned long long>(c.undetected_benign),
            static_cast<unsigned long long>(c.undetected_harmful));
        out << line;
    }
    if (report.leading_term.has_value()) {
        out << "leading term: (" << report.leading_term->coefficient << ", " << report.leading_term->degree << ")\n";
    } else {
        out << "leading term: none up to weight " << report.max_weight << "\n";
    }
    auto odd = report.branch_inconsistent();
    if (!odd.empty()) {
        out << odd.size() << " pattern(s) classified differently across branches\n";
    }
    return out.str();
}

}  // namespace magicfab
