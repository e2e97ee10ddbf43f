#ifndef MAGICFAB_ERROR_ANALYSIS_H
#define MAGICFAB_ERROR_ANALYSIS_H

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "magicfab/circuit.h"

namespace magicfab {

enum class ErrorClass : uint8_t { Detected, UndetectedBenign, UndetectedHarmful };

std::string_view error_class_name(ErrorClass c);

enum class Backend : uint8_t {
    StateVector,  // full simulation under several branch policies
    PauliFrame,   // error propagation through the Clifford skeleton; throws when unsupported
    Auto,         // Pauli frame where possible, state vector otherwise
};

std::string_view backend_name(Backend b);
Backend backend_from_name(std::string_view name);

/// Default fidelity gap below which an accepted output counts as harmful.
inline constexpr double kDefaultHarmTolerance = 1e-6;

struct WeightCounts {
    uint64_t detected = 0;
    uint64_t undetected_benign = 0;
    uint64_t undetected_harmful = 0;

    uint64_t total() const { return detected + undetected_benign + undetected_harmful; }
    void add(ErrorClass c);
    bool operator==(const WeightCounts &) const = default;
};

struct LeadingTerm {
    uint64_t coefficient = 0;
    int degree = 0;

    bool operator==(const LeadingTerm &) const = default;
};

/// Classification of one error pattern. Bit k of `mask` marks an error on injection site k.
struct PatternResult {
    uint64_t mask = 0;
    ErrorClass cls = ErrorClass::UndetectedBenign;
    /// Lowest accepted-output fidelity seen (1 when every branch rejected).
    double fidelity = 1;
    /// The classification differed between measurement branches.
    bool branch_inconsistent = false;

    bool operator==(const PatternResult &) const = default;
};

struct InjectionReport {
    std::string circuit;
    std::vector<std::string> sites;
    int max_weight = 0;
    double harm_tolerance = kDefaultHarmTolerance;
    std::map<int, WeightCounts> per_weight;
    std::optional<LeadingTerm> leading_term;
    /// Every enumerated pattern, ordered by weight and then by mask.
    std::vector<PatternResult> patterns;

    size_t num_sites() const { return sites.size(); }
    /// Masks whose classification depended on the branch taken.
    std::vector<uint64_t> branch_inconsistent() const;
    /// Site labels of a pattern mask.
    std::vector<std::string> labels(uint64_t mask) const;
    bool operator==(const InjectionReport &) const = default;
};

struct SuppressionModel {
    uint64_t coefficient = 0;
    int degree = 0;

    /// coefficient * eps^degree.
    double evaluate(double eps) const;
    bool operator==(const SuppressionModel &) const = default;
};

/// Classifies single patterns, with a cache so repeated patterns (Monte Carlo) cost nothing.
class PatternClassifier {
   public:
    PatternClassifier(const Circuit &circuit, double harm_tolerance = kDefaultHarmTolerance, Backend backend = Backend::Auto);

    PatternResult classify(uint64_t mask);
    /// Classification by each path, without caching.
    PatternResult classify_state_vector(uint64_t mask) const;
    PatternResult classify_pauli_frame(uint64_t mask) const;

    const std::vector<std::string> &sites() const { return sites_; }
    const Circuit &circuit() const { return circuit_; }

   private:
    std::set<std::string> errors_for(uint64_t mask) const;
    ErrorClass from_fidelity(bool accepted, double fid) const;

    Circuit circuit_;
    double harm_tolerance_;
    Backend backend_;
    std::vector<std::string> sites_;
    std::mutex cache_mutex_;
    std::unordered_map<uint64_t, PatternResult> cache_;
};

struct EnumerateOptions {
    double harm_tolerance = kDefaultHarmTolerance;
    Backend backend = Backend::Auto;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Classifies every Z-error pattern of weight <= max_weight. Throws std::invalid_argument when the
/// circuit has no injection sites or no reference state, or max_weight exceeds the site count.
InjectionReport enumerate_errors(const Circuit &circuit, int max_weight, const EnumerateOptions &options = {});

/// Leading undetected-harmful term of a report. Throws std::domain_error when no harmful class
/// was found within the scanned weights.
SuppressionModel derive_suppression(const InjectionReport &report);

/// Probabilities implied by a report under independent per-site error probability eps, truncated
/// at the report's maximum weight.
struct RatePrediction {
    double rejection = 0;
    double harmful_accept = 0;
    double accept = 0;
};
RatePrediction predict_rates(const InjectionReport &report, double eps);

struct MonteCarloResult {
    uint64_t trials = 0;
    double rejection_rate = 0;
    double rejection_stderr = 0;
    /// Fraction of all trials that were accepted with a harmful output.
    double harmful_accept_rate = 0;
    double harmful_stderr = 0;
    /// Harmful fraction among accepted trials, the factory's output error rate.
    double output_error_rate = 0;
};

/// Samples independent per-site Z errors with probability eps. Throws std::invalid_argument unless
/// 0 <= eps <= 0.1 and trials >= 1.
MonteCarloResult monte_carlo_validate(
    const Circuit &circuit, double eps, uint64_t trials, uint64_t seed, double harm_tolerance = kDefaultHarmTolerance);

/// Same, reusing a classifier so several runs share one pattern cache.
MonteCarloResult monte_carlo_validate(PatternClassifier &classifier, double eps, uint64_t trials, uint64_t seed);

std::string report_table(const InjectionReport &report);

}  // namespace magicfab

#endif
