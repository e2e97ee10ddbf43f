#ifndef MAGICFAB_PIPELINE_H
#define MAGICFAB_PIPELINE_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace magicfab {

enum class ConsumerKind : uint8_t {
    CCZ,  // 8 |T1> -> |CCZ>
    C2T,  // 8 |T1> -> 2 |T2> through a catalyzed CCZ
};

std::string_view consumer_kind_name(ConsumerKind k);
ConsumerKind consumer_kind_from_name(std::string_view name);

struct ConsumerConfig {
    ConsumerKind kind = ConsumerKind::CCZ;
    double period_d = 5.5;
    int inputs = 8;
    int outputs = 1;

    static ConsumerConfig ccz() { return {ConsumerKind::CCZ, 5.5, 8, 1}; }
    static ConsumerConfig c2t() { return {ConsumerKind::C2T, 6.5, 8, 2}; }
    bool operator==(const ConsumerConfig &) const = default;
};

/// All times are in units of d surface-code cycles.
struct PipelineConfig {
    int num_level1 = 5;
    /// Time per level-1 attempt, per output state.
    double level1_period_d = 3.25;
    double level1_discard_prob = 0.03;
    /// Surplus states each level-1 factory's hallway can hold. The shared pool holds the
    /// consumer's inputs plus num_level1 * buffer_capacity.
    int buffer_capacity = 2;
    ConsumerConfig consumer = ConsumerConfig::ccz();
    /// Probability a consumer run detects an error in its CCZ. The run is discarded; a C2T
    /// consumer also discards its catalyst and waits bootstrap_delay_d for a new one.
    double ccz_detect_prob = 0;
    /// Probability a consumer run's CCZ carries an undetected error. For C2T it poisons the catalyst.
    double ccz_error_prob = 0;
    double bootstrap_delay_d = 10;
    /// Delay between a level-1 output and its availability to the consumer.
    double routing_latency_d = 0;
    double horizon_d = 1e5;
    uint64_t seed = 0;

    /// Throws std::invalid_argument for nonpositive periods, probabilities outside [0, 1) etc.
    void validate() const;
    int pool_capacity() const { return consumer.inputs + num_level1 * buffer_capacity; }

    /// Five legacy level-1 factories feeding the CCZ factory.
    static PipelineConfig ccz_default();
    /// Four improved level-1 factories feeding the catalyzed T factory.
    static PipelineConfig c2t_default();

    bool operator==(const PipelineConfig &) const = default;
};

struct PipelineStats {
    /// Completed consumer runs whose outputs were kept.
    uint64_t outputs_produced = 0;
    /// outputs_produced times the states per run.
    uint64_t output_states = 0;
    uint64_t discarded_runs = 0;
    double mean_output_period_d = 0;
    /// Time the consumer spent waiting for inputs after its first run, over the time since then.
    double consumer_stall_fraction = 0;
    /// Fraction of simulated time the pool held k states, k = 0..capacity.
    std::vector<double> buffer_occupancy_histogram;
    uint64_t catalyst_discard_events = 0;
    double bootstrap_time_d = 0;
    uint64_t bad_outputs = 0;
    std::optional<uint64_t> first_bad_output_index;

    uint64_t level1_attempts = 0;
    uint64_t level1_discards = 0;
    uint64_t level1_states = 0;
    uint64_t consumed_states = 0;
    /// States in the pool, in transit or held by blocked producers when the horizon was reached.
    uint64_t leftover_states = 0;
    double producer_blocked_time_d = 0;

    bool operator==(const PipelineStats &) const = default;
};

/// Runs the event-driven simulation. When `trace` is given, one CSV row per event is written.
PipelineStats simulate(const PipelineConfig &config, std::ostream *trace = nullptr);

/// period / (1 - discard). Throws std::invalid_argument unless 0 <= discard < 1.
double level1_effective_period(double period_d, double discard_prob);

struct CatalystErrorStats {
    uint64_t trials = 0;
    double p_any_bad = 0;
    double p_any_stderr = 0;
    double mean_bad_count = 0;
    double mean_stderr = 0;
    /// 1 - (1 - eps)^n.
    double p_any_closed_form = 0;
    /// sum_{k=1..n} (1 - (1 - eps)^k).
    double mean_closed_form = 0;
};

/// Monte Carlo of catalyst poisoning: each of n runs is erroneous with probability eps, and every
/// output from the first erroneous run on is bad. Throws std::invalid_argument unless
/// 0 <= eps < 1, n_runs >= 1 and trials >= 1.
CatalystErrorStats catalyst_error_stats(uint64_t n_runs, double eps, uint64_t trials, uint64_t seed);

std::string stats_table(const PipelineStats &stats);

}  // namespace magicfab

#endif
