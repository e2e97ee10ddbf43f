#include "magicfab/circuit.h"

#include <stdexcept>

namespace magicfab {

namespace {

constexpr double kBranchCutoff = 1e-12;

bool conditions_hold(const std::vector<ClassicalCondition> &conditions, const std::vector<uint8_t> &record) {
    for (const auto &c : conditions) {
        if (!c.evaluate(record)) {
            return false;
        }
    }
    return true;
}

void apply_injection(QuantumState &state, const InjectOp &op, const std::set<std::string> &errors) {
    state.apply(Gate::phase(op.angle_deg, {op.qubit}));
    if (errors.contains(op.label)) {
        state.apply(Gate::single(GateKind::Z, {op.qubit}));
    }
}

void check_errors_are_sites(const Circuit &circuit, const std::set<std::string> &errors) {
    if (errors.empty()) {
        return;
    }
    auto sites = circuit.injection_sites();
    std::set<std::string> known(sites.begin(), sites.end());
    for (const auto &e : errors) {
        if (!known.contains(e)) {
            throw std::invalid_argument("'" + e + "' is not an injection site of " + circuit.name);
        }
    }
}

class Executor {
   public:
    Executor(const Circuit &circuit, const RunOptions &options)
        : circuit_(circuit), options_(options), rng_(options.seed) {
    }

    RunOutcome run(QuantumState state, size_t start) {
        bool accepted = true;
        size_t measurement = 0;
        for (size_t k = start; k < circuit_.ops.size(); k++) {
            std::visit(
                [&](const auto &op) {
                    using T = std::decay_t<decltype(op)>;
                    if constexpr (std::is_same_v<T, GateOp>) {
                        if (conditions_hold(op.conditions, state.record())) {
                            state.apply(op.gate);
                        }
                    } else if constexpr (std::is_same_v<T, MeasureOp>) {
                        measure(state, op, measurement++);
                    } else if constexpr (std::is_same_v<T, PostselectOp>) {
                        if (postselect(state, op.check) == PostselectResult::Rejected) {
                            accepted = false;
                        }
                    } else {
                        apply_injection(state, op, options_.injected_errors);
                    }
                },
                circuit_.ops[k]);
        }
        return RunOutcome{std::move(state), accepted};
    }

   private:
    void measure(QuantumState &state, const MeasureOp &op, size_t index) {
        if (!conditions_hold(op.conditions, state.record())) {
            state.push_record(0);
            return;
        }
        switch (options_.branch_mode) {
            case BranchMode::Random:
                state.measure_pauli_product(op.paulis, std::nullopt, rng_);
                return;
            case BranchMode::Forced:
                if (index < options_.forced_outcomes.size()) {
                    state.project(op.paulis, options_.forced_outcomes[index]);
                } else {
                    state.measure_pauli_product(op.paulis, std::nullopt, rng_);
                }
                return;
            case BranchMode::PreferZero:
            case BranchMode::PreferOne: {
                uint8_t preferred = options_.branch_mode == BranchMode::PreferOne ? 1 : 0;
                double p = state.outcome_probability(op.paulis, preferred);
                state.project(op.paulis, p > kBranchCutoff ? preferred : preferred ^ 1);
                return;
            }
        }
    }

    const Circuit &circuit_;
    const RunOptions &options_;
    std::mt19937_64 rng_;
};

void branch_walk(
    const Circuit &circuit,
    QuantumState state,
    size_t k,
    bool accepted,
    double probability,
    const std::set<std::string> &errors,
    const std::function<void(const RunOutcome &, double)> &visit) {
    for (; k < circuit.ops.size(); k++) {
        const Op &op = circuit.ops[k];
        if (const auto *g = std::get_if<GateOp>(&op)) {
            if (conditions_hold(g->conditions, state.record())) {
                state.apply(g->gate);
            }
        } else if (const auto *inj = std::get_if<InjectOp>(&op)) {
            apply_injection(state, *inj, errors);
        } else if (const auto *ps = std::get_if<PostselectOp>(&op)) {
            if (postselect(state, ps->check) == PostselectResult::Rejected) {
                accepted = false;
            }
        } else {
            const auto &m = std::get<MeasureOp>(op);
            if (!conditions_hold(m.conditions, state.record())) {
                state.push_record(0);
                continue;
            }
            double p0 = state.outcome_probability(m.paulis, 0);
            double p1 = state.outcome_probability(m.paulis, 1);
            if (p0 > kBranchCutoff && p1 > kBranchCutoff) {
                QuantumState other = state;
                other.project(m.paulis, 1);
                branch_walk(circuit, std::move(other), k + 1, accepted, probability * p1, errors, visit);
                state.project(m.paulis, 0);
                probability *= p0;
            } else {
                state.project(m.paulis, p0 > kBranchCutoff ? 0 : 1);
            }
        }
    }
    visit(RunOutcome{std::move(state), accepted}, probability);
}

}  // namespace

bool ClassicalCondition::evaluate(const std::vector<uint8_t> &record) const {
    bool v = negate;
    for (auto i : record_indices) {
        if (i >= record.size()) {
            throw std::out_of_range("condition references record bit " + std::to_string(i) + " which does not exist yet");
        }
        v ^= record[i] != 0;
    }
    return v;
}

std::vector<std::string> Circuit::injection_sites() const {
    std::vector<std::string> out;
    for (const auto &op : ops) {
        if (const auto *inj = std::get_if<InjectOp>(&op)) {
            out.push_back(inj->label);
        }
    }
    return out;
}

size_t Circuit::num_measurements() const {
    size_t n = 0;
    for (const auto &op : ops) {
        n += std::holds_alternative<MeasureOp>(op);
    }
    return n;
}

void Circuit::validate() const {
    if (prep_length > ops.size()) {
        throw std::invalid_argument("preparation longer than the circuit");
    }
    size_t measured = 0;
    std::set<std::string> labels;
    auto check_condition = [&](const ClassicalCondition &c) {
        for (auto i : c.record_indices) {
            if (i >= measured) {
                throw std::invalid_argument(
                    name + ": condition references record bit " + std::to_string(i) + " before it is measured");
            }
        }
    };
    for (const auto &op : ops) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            g->gate.validate(num_qubits);
            for (const auto &c : g->conditions) {
                check_condition(c);
            }
        } else if (const auto *m = std::get_if<MeasureOp>(&op)) {
            if (m->paulis.empty()) {
                throw std::invalid_argument(name + ": empty Pauli product measurement");
            }
            std::set<uint32_t> seen;
            for (const auto &p : m->paulis) {
                if (p.qubit >= num_qubits || !seen.insert(p.qubit).second) {
                    throw std::invalid_argument(name + ": bad qubit in Pauli product measurement");
                }
            }
            for (const auto &c : m->conditions) {
                check_condition(c);
            }
            measured++;
        } else if (const auto *ps = std::get_if<PostselectOp>(&op)) {
            check_condition(ps->check);
        } else {
            const auto &inj = std::get<InjectOp>(op);
            if (inj.qubit >= num_qubits) {
                throw std::invalid_argument(name + ": injection site qubit out of range");
            }
            if (!labels.insert(inj.label).second) {
                throw std::invalid_argument(name + ": duplicate injection label '" + inj.label + "'");
            }
        }
    }
    for (auto q : outputs) {
        if (q >= num_qubits) {
            throw std::invalid_argument(name + ": output qubit out of range");
        }
    }
    if (reference.has_value() && reference->num_qubits() != outputs.size()) {
        throw std::invalid_argument(name + ": reference state does not match the output qubits");
    }
}

bool Circuit::operator==(const Circuit &other) const {
    if (name != other.name || num_qubits != other.num_qubits || qubit_labels != other.qubit_labels ||
        ops != other.ops || prep_length != other.prep_length || outputs != other.outputs ||
        reference.has_value() != other.reference.has_value()) {
        return false;
    }
    if (reference.has_value()) {
        auto a = reference->amplitudes();
        auto b = other.reference->amplitudes();
        return std::equal(a.begin(), a.end(), b.begin(), b.end());
    }
    return true;
}

PostselectResult postselect(const QuantumState &state, const ClassicalCondition &condition) {
    return condition.evaluate(state.record()) ? PostselectResult::Rejected : PostselectResult::Accepted;
}

RunOutcome run_circuit(const Circuit &circuit, const RunOptions &options) {
    circuit.validate();
    check_errors_are_sites(circuit, options.injected_errors);
    Executor ex(circuit, options);
    return ex.run(QuantumState(circuit.num_qubits), 0);
}

RunOutcome run_circuit_on(const Circuit &circuit, QuantumState input, const RunOptions &options) {
    circuit.validate();
    check_errors_are_sites(circuit, options.injected_errors);
    if (input.num_qubits() != circuit.num_qubits) {
        throw std::invalid_argument("input state size does not match the circuit");
    }
    Executor ex(circuit, options);
    return ex.run(std::move(input), circuit.prep_length);
}

void for_each_branch(
    const Circuit &circuit,
    const QuantumState &input,
    bool skip_preparation,
    const std::set<std::string> &injected_errors,
    const std::function<void(const RunOutcome &, double)> &visit) {
    circuit.validate();
    check_errors_are_sites(circuit, injected_errors);
    if (input.num_qubits() != circuit.num_qubits) {
        throw std::invalid_argument("input state size does not match the circuit");
    }
    branch_walk(circuit, input, skip_preparation ? circuit.prep_length : 0, true, 1.0, injected_errors, visit);
}

double output_fidelity(const Circuit &circuit, const QuantumState &state) {
    if (!circuit.reference.has_value()) {
        throw std::invalid_argument(circuit.name + " has no reference state");
    }
    return subsystem_fidelity(state, circuit.outputs, *circuit.reference);
}

}  // namespace magicfab
