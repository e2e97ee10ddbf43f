#include "magicfab/resource_model.h"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace magicfab {

namespace {

void check_distance(int d, const char *what) {
    if (d < 3 || d % 2 == 0) {
        throw std::invalid_argument(std::string(what) + " must be an odd integer >= 3");
    }
}

uint64_t ceil_half(uint64_t v) {
    return v / 2 + v % 2;
}

}  // namespace

PhysicalAssumptions::PhysicalAssumptions() : level1_cells(0) {
    level1_cells = calibrate_level1_cells(kLevel1TopologicalAnchor, kAnchorDistance, *this);
}

void PhysicalAssumptions::validate() const {
    if (!(gate_error > 0 && gate_error <= 1e-2)) {
        throw std::invalid_argument("gate error must lie in (0, 1e-2]");
    }
    if (!(injection_error >= 0 && injection_error < 1)) {
        throw std::invalid_argument("injection error must lie in [0, 1)");
    }
    if (!(cycle_time > 0)) {
        throw std::invalid_argument("cycle time must be positive");
    }
    if (!(topological_A > 0) || !(topological_threshold > 0) || !(level1_cells >= 0)) {
        throw std::invalid_argument("topological constants must be positive");
    }
}

void DistanceAssignment::validate() const {
    check_distance(d0, "d0");
    check_distance(d1, "d1");
    check_distance(d2, "d2");
    if (!(d0 <= d1 && d1 <= d2)) {
        throw std::invalid_argument("distances must satisfy d0 <= d1 <= d2");
    }
}

std::string_view regime_name(Regime r) {
    return r == Regime::DistillationLimited ? "distillation" : "minimal";
}

Regime regime_from_name(std::string_view name) {
    if (name == "distillation" || name == "distillation_limited") {
        return Regime::DistillationLimited;
    }
    if (name == "minimal" || name == "minimal_distance") {
        return Regime::MinimalDistance;
    }
    throw std::invalid_argument("unknown regime '" + std::string(name) + "'");
}

FactoryModel FactoryModel::ccz() {
    FactoryModel f;
    f.name = "ccz";
    f.output = FactoryOutput::CCZ;
    f.inputs_per_run = 8;
    f.outputs_per_run = 1;
    f.suppression = {28, 2};
    f.footprint_width_d = 12;
    f.footprint_height_d = 6;
    f.depth_d = 5.5;
    f.level1_factories = 5;
    return f;
}

FactoryModel FactoryModel::catalyzed_t() {
    FactoryModel f;
    f.name = "c2t";
    f.output = FactoryOutput::T;
    f.inputs_per_run = 8;
    f.outputs_per_run = 2;
    f.suppression = {28, 2};
    f.footprint_width_d = 12;
    f.footprint_height_d = 6;
    f.depth_d = 6.5;
    f.correlated_errors = true;
    f.level1_factories = 4;
    return f;
}

FactoryModel FactoryModel::legacy_t() {
    FactoryModel f;
    f.name = "legacy-t";
    f.output = FactoryOutput::T;
    f.inputs_per_run = 15;
    f.outputs_per_run = 1;
    f.suppression = {35, 3};
    f.footprint_width_d = 12;
    f.footprint_height_d = 8;
    f.depth_d = 6.5;
    f.level1_factories = 0;
    return f;
}

FactoryModel FactoryModel::with_input_error(double eps) const {
    FactoryModel f = *this;
    f.discard_prob = 1 - std::pow(1 - eps, inputs_per_run);
    return f;
}

void Workload::validate() const {
    if (!(error_budget > 0 && error_budget < 1)) {
        throw std::invalid_argument("error budget must lie in (0, 1)");
    }
}

double logical_cell_error(int d, const PhysicalAssumptions &assumptions) {
    check_distance(d, "code distance");
    return assumptions.topological_A *
           std::pow(assumptions.gate_error / assumptions.topological_threshold, (d + 1) / 2);
}

double calibrate_level1_cells(double anchor, int d, const PhysicalAssumptions &assumptions) {
    return anchor / logical_cell_error(d, assumptions);
}

ErrorChain chain_errors(
    Regime regime, const DistanceAssignment &distances, const PhysicalAssumptions &assumptions,
    const FactoryModel &factory) {
    distances.validate();
    assumptions.validate();
    ErrorChain c;
    const SuppressionModel level1{35, 3};
    if (regime == Regime::DistillationLimited) {
        c.eps_t0 = assumptions.injection_error;
        c.eps_t1 = level1.evaluate(c.eps_t0);
        c.eps_output = factory.suppression.evaluate(c.eps_t1);
        return c;
    }
    // The level-0 gate that moves an injected state into the level-1 factory doubles its error.
    c.eps_t0 = 2 * assumptions.injection_error;
    c.level1_topological = assumptions.level1_cells * logical_cell_error(distances.d1, assumptions);
    c.eps_t1 = level1.evaluate(c.eps_t0) + c.level1_topological;
    c.level2_topological = factory.volume_cells() * logical_cell_error(distances.d2, assumptions);
    c.eps_output = factory.suppression.evaluate(c.eps_t1) + c.level2_topological;
    return c;
}

double level1_discard_prob(double eps_t0) {
    return 1 - std::pow(1 - eps_t0, 15);
}

Workload factoring_workload(uint64_t n_bits) {
    if (n_bits < 8) {
        throw std::invalid_argument("factoring workload needs n >= 8");
    }
    Workload w;
    w.toffoli_count = 12 * n_bits * n_bits * n_bits;
    w.t_count = 0;
    w.logical_qubits = 3 * n_bits;
    return w;
}

ResourceEstimate estimate(
    const Workload &workload, const FactoryModel &factory, Regime regime, const DistanceAssignment &distances,
    const PhysicalAssumptions &assumptions) {
    workload.validate();
    ErrorChain chain = chain_errors(regime, distances, assumptions, factory);

    ResourceEstimate e;
    e.regime = regime;
    e.distances = distances;
    e.factory = factory.name;
    e.eps_t0 = chain.eps_t0;
    e.eps_t1 = chain.eps_t1;
    e.eps_output = chain.eps_output;
    e.states_before_failure = chain.eps_output > 0 ? 1 / chain.eps_output : INFINITY;

    if (factory.output == FactoryOutput::CCZ) {
        // T gates are served by converting a CCZ into T states two at a time.
        e.runs = workload.toffoli_count + ceil_half(workload.t_count);
    } else {
        uint64_t t_states = 4 * workload.toffoli_count + workload.t_count;
        e.runs = factory.outputs_per_run == 2 ? ceil_half(t_states) : t_states * factory.outputs_per_run;
    }

    double d2 = distances.d2;
    double cells = factory.footprint_width_d * factory.footprint_height_d + static_cast<double>(workload.logical_qubits);
    e.total_physical_qubits = static_cast<uint64_t>(std::llround(cells * 2 * d2 * d2));
    e.runtime_seconds = static_cast<double>(e.runs) * factory.depth_d * d2 * assumptions.cycle_time;
    // One failure probability per run: correlated outputs of a run fail together.
    e.success_probability = std::exp(static_cast<double>(e.runs) * std::log1p(-chain.eps_output));
    e.feasible = 1 - e.success_probability <= workload.error_budget;
    return e;
}

double toffoli_speedup(const FactoryModel &baseline, const FactoryModel &faster) {
    auto period = [](const FactoryModel &f) {
        return f.states_per_toffoli() * f.depth_d / f.outputs_per_run;
    };
    return period(baseline) / period(faster);
}

std::string estimate_table(const ResourceEstimate &e) {
    std::ostringstream out;
    char line[256];
    std::snprintf(
        line, sizeof(line), "%-10s %-12s %3s %3s %3s %10s %10s %10s %12s %14s %12s %8s\n", "factory", "regime", "d0",
        "d1", "d2", "eps_T0", "eps_T1", "eps_out", "states", "qubits", "runtime_y", "success");
    out << line;
    std::snprintf(
        line, sizeof(line), "%-10s %-12s %3d %3d %3d %10.3g %10.3g %10.3g %12.3g %14llu %12.3g %8.4f\n",
        e.factory.c_str(), std::string(regime_name(e.regime)).c_str(), e.distances.d0, e.distances.d1, e.distances.d2,
        e.eps_t0, e.eps_t1, e.eps_output, e.states_before_failure,
        static_cast<unsigned long long>(e.total_physical_qubits), e.runtime_seconds / kSecondsPerYear,
        e.success_probability);
    out << line;
    return out.str();
}

}  // namespace magicfab
