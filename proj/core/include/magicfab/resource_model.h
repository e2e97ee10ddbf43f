#ifndef MAGICFAB_RESOURCE_MODEL_H
#define MAGICFAB_RESOURCE_MODEL_H

#include <cstdint>
#include <string>

#include "magicfab/error_analysis.h"

namespace magicfab {

/// Level-1 topological error the default calibration pins at distance 15.
inline constexpr double kLevel1TopologicalAnchor = 1.12e-6;
inline constexpr int kAnchorDistance = 15;

struct PhysicalAssumptions {
    double gate_error = 1e-3;
    double injection_error = 1e-3;
    double cycle_time = 1e-6;  // seconds
    double topological_A = 0.1;
    double topological_threshold = 1e-2;
    /// Effective number of d x d x d cells a level-1 factory exposes to topological error.
    /// Fitted once, see calibrate_level1_cells.
    double level1_cells;

    PhysicalAssumptions();
    /// Throws std::invalid_argument outside gate_error in (0, 1e-2], cycle_time > 0, etc.
    void validate() const;
};

struct DistanceAssignment {
    int d0 = 7;
    int d1 = 15;
    int d2 = 31;

    /// Throws std::invalid_argument unless d0 <= d1 <= d2, all odd and >= 3.
    void validate() const;
    bool operator==(const DistanceAssignment &) const = default;
};

enum class Regime : uint8_t { DistillationLimited, MinimalDistance };

std::string_view regime_name(Regime r);
/// Accepts "distillation"/"distillation_limited" and "minimal"/"minimal_distance".
Regime regime_from_name(std::string_view name);

enum class FactoryOutput : uint8_t { CCZ, T };

struct FactoryModel {
    std::string name;
    FactoryOutput output = FactoryOutput::CCZ;
    int inputs_per_run = 8;
    int outputs_per_run = 1;
    SuppressionModel suppression;
    double footprint_width_d = 12;
    double footprint_height_d = 6;
    double depth_d = 5.5;
    /// Probability a run is discarded. The presets leave it at 0; with_input_error fills it in.
    double discard_prob = 0;
    /// Output errors of one run are correlated (a poisoned catalyst spoils the whole pair).
    bool correlated_errors = false;
    int level1_factories = 5;

    /// Output states one Toffoli consumes: 1 |CCZ> or 4 |T>.
    int states_per_toffoli() const { return output == FactoryOutput::CCZ ? 1 : 4; }
    /// Footprint times depth, in d x d x d cells.
    double volume_cells() const { return footprint_width_d * footprint_height_d * depth_d; }
    /// Copy whose discard probability is that of `inputs_per_run` inputs, each faulty with
    /// probability eps, when every single fault is detected.
    FactoryModel with_input_error(double eps) const;

    /// 8 |T> -> |CCZ>, 12d x 6d x 5.5d, fed by five level-1 factories.
    static FactoryModel ccz();
    /// 8 |T> -> 2 |T> through a catalyzed CCZ, 12d x 6d x 6.5d, fed by four level-1 factories.
    static FactoryModel catalyzed_t();
    /// Prior 15 |T> -> |T> factory, 12d x 8d x 6.5d.
    static FactoryModel legacy_t();
};

struct Workload {
    uint64_t toffoli_count = 0;
    uint64_t t_count = 0;
    uint64_t logical_qubits = 0;
    double error_budget = 0.5;

    void validate() const;
};

/// Logical error per d x d x d cell: A * (gate_error / threshold)^((d + 1) / 2). Throws
/// std::invalid_argument for even d or d < 3.
double logical_cell_error(int d, const PhysicalAssumptions &assumptions);

/// Cell count that makes a level-1 factory at distance `d` contribute `anchor` topological error.
double calibrate_level1_cells(double anchor, int d, const PhysicalAssumptions &assumptions);

struct ErrorChain {
    double eps_t0 = 0;
    double level1_topological = 0;
    double eps_t1 = 0;
    double level2_topological = 0;
    double eps_output = 0;
};

/// Error rates through injection, level 1 (15-to-1) and the given level-2 factory.
ErrorChain chain_errors(
    Regime regime, const DistanceAssignment &distances, const PhysicalAssumptions &assumptions,
    const FactoryModel &factory = FactoryModel::ccz());

/// Probability that a 15-to-1 level-1 run detects an error and discards its output.
double level1_discard_prob(double eps_t0);

/// 12 n^3 Toffolis on 3n logical qubits. Throws std::invalid_argument for n < 8.
Workload factoring_workload(uint64_t n_bits);

struct ResourceEstimate {
    Regime regime = Regime::MinimalDistance;
    DistanceAssignment distances;
    std::string factory;
    double eps_t0 = 0;
    double eps_t1 = 0;
    double eps_output = 0;
    double states_before_failure = 0;
    /// Factory runs the workload needs.
    uint64_t runs = 0;
    uint64_t total_physical_qubits = 0;
    double runtime_seconds = 0;
    double success_probability = 1;
    bool feasible = true;

    bool operator==(const ResourceEstimate &) const = default;
};

ResourceEstimate estimate(
    const Workload &workload, const FactoryModel &factory, Regime regime, const DistanceAssignment &distances,
    const PhysicalAssumptions &assumptions);

/// Ratio of the time each factory needs to supply one Toffoli's worth of states.
double toffoli_speedup(const FactoryModel &baseline, const FactoryModel &faster);

inline constexpr double kSecondsPerYear = 365.25 * 24 * 3600;

/// Header plus one row: factory, regime, distances, error rates, states, qubits, runtime, success.
std::string estimate_table(const ResourceEstimate &e);

}  // namespace magicfab

#endif
