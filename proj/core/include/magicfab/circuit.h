#ifndef MAGICFAB_CIRCUIT_H
#define MAGICFAB_CIRCUIT_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "magicfab/gate.h"
#include "magicfab/quantum_state.h"

namespace magicfab {

/// XOR of referenced measurement-record bits, optionally negated.
struct ClassicalCondition {
    std::vector<size_t> record_indices;
    bool negate = false;

    bool evaluate(const std::vector<uint8_t> &record) const;
    bool operator==(const ClassicalCondition &) const = default;
};

/// A gate, applied only when every condition evaluates true (an empty list means unconditional).
struct GateOp {
    Gate gate;
    std::vector<ClassicalCondition> conditions;

    bool operator==(const GateOp &) const = default;
};

/// Pauli-product measurement. A single-term product is an ordinary basis measurement. When the
/// conditions are not met the measurement is skipped and a 0 is recorded in its slot, so record
/// positions never depend on the branch taken.
struct MeasureOp {
    std::vector<PauliTerm> paulis;
    std::vector<ClassicalCondition> conditions;

    bool operator==(const MeasureOp &) const = default;
};

/// Post-selection check. The run is rejected when `check` evaluates true, i.e. when the referenced
/// parity (after the optional negation) is odd.
struct PostselectOp {
    ClassicalCondition check;

    bool operator==(const PostselectOp &) const = default;
};

/// A labeled noisy-T entry point: a phase gate whose input magic state may carry a Z error. An
/// injected error is applied as Z immediately after the gate.
struct InjectOp {
    std::string label;
    uint32_t qubit;
    double angle_deg = 45;

    bool operator==(const InjectOp &) const = default;
};

using Op = std::variant<GateOp, MeasureOp, PostselectOp, InjectOp>;

struct Circuit {
    std::string name;
    size_t num_qubits = 0;
    std::map<uint32_t, std::string> qubit_labels;
    std::vector<Op> ops;
    /// Leading ops that prepare the circuit's nominal input. Skipped by run_circuit_on.
    size_t prep_length = 0;
    /// Output qubits, in the order matching the reference state's qubits.
    std::vector<uint32_t> outputs;
    std::optional<QuantumState> reference;

    std::vector<std::string> injection_sites() const;
    size_t num_measurements() const;
    /// Checks qubit ranges, that conditions only reference earlier measurements and that injection
    /// labels are unique. Throws std::invalid_argument on a malformed circuit.
    void validate() const;

    bool operator==(const Circuit &other) const;
};

enum class BranchMode : uint8_t {
    Random,      // Born-rule sampling from the seeded generator
    PreferZero,  // take outcome 0 unless it has zero probability
    PreferOne,   // take outcome 1 unless it has zero probability
    Forced,      // take `forced_outcomes[k]` for the k-th measurement (throws if impossible)
};

struct RunOptions {
    uint64_t seed = 0;
    std::set<std::string> injected_errors;
    BranchMode branch_mode = BranchMode::Random;
    std::vector<uint8_t> forced_outcomes;
};

struct RunOutcome {
    QuantumState state;
    bool accepted = true;

    const std::vector<uint8_t> &record() const { return state.record(); }
};

/// Result of a post-selection check.
enum class PostselectResult : uint8_t { Accepted, Rejected };

/// Checks a post-selection condition against the state's record. Throws std::out_of_range when the
/// condition references bits that do not exist yet.
PostselectResult postselect(const QuantumState &state, const ClassicalCondition &condition);

/// Runs the whole circuit (preparation included) starting from |0...0>.
RunOutcome run_circuit(const Circuit &circuit, const RunOptions &options = {});
/// Runs the circuit body on a caller-supplied input state, skipping the preparation ops.
RunOutcome run_circuit_on(const Circuit &circuit, QuantumState input, const RunOptions &options = {});

/// Visits every measurement branch with nonzero probability. The callback receives the final
/// outcome and the probability of that branch. Useful for small circuits only.
void for_each_branch(
    const Circuit &circuit,
    const QuantumState &input,
    bool skip_preparation,
    const std::set<std::string> &injected_errors,
    const std::function<void(const RunOutcome &, double)> &visit);

/// Fidelity of the circuit's output qubits with its declared reference state.
double output_fidelity(const Circuit &circuit, const QuantumState &state);

}  // namespace magicfab

#endif
