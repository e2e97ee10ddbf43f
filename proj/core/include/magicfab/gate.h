#ifndef MAGICFAB_GATE_H
#define MAGICFAB_GATE_H

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace magicfab {

using Complex = std::complex<double>;
using Matrix2 = std::array<Complex, 4>;  // row-major {m00, m01, m10, m11}

enum class Axis : uint8_t { X, Y, Z };

enum class GateKind : uint8_t {
    H,
    X,
    Y,
    Z,
    S,
    S_DAG,
    T,
    T_DAG,
    PHASE,  // Z^(angle/180): diag(1, e^{i angle})
    X_HALF,
    X_NEG_HALF,
    CNOT,               // targets = {control, target}
    CZ,                 // targets = {a, b}
    CCZ,                // targets = {a, b, c}
    MULTI_TARGET_CNOT,  // targets = {control, t1, t2, ...}
};

/// A control on a qubit. `axis` selects the basis the control reads (Z: computational basis,
/// X: the |+>/|-> basis, i.e. a Z control conjugated by Hadamards). `on_one` picks whether the
/// gate fires on the |1> (|->) state or on the |0> (|+>) state.
struct Control {
    uint32_t qubit;
    Axis axis = Axis::Z;
    bool on_one = true;

    bool operator==(const Control &) const = default;
};

struct Gate {
    GateKind kind;
    std::vector<uint32_t> targets;
    std::vector<Control> controls;
    double angle_deg = 0;  // only meaningful for PHASE

    bool operator==(const Gate &) const = default;

    static Gate single(GateKind kind, std::vector<uint32_t> targets);
    static Gate phase(double angle_deg, std::vector<uint32_t> targets);
    static Gate cnot(uint32_t control, uint32_t target);
    static Gate cz(uint32_t a, uint32_t b);
    static Gate ccz(uint32_t a, uint32_t b, uint32_t c);
    /// X on every target, conditioned on `control` (which may be an X-axis control).
    static Gate multi_target_cnot(Control control, std::vector<uint32_t> targets);
    /// Tensor product of one single-qubit kind on `targets`, conditioned on `controls`.
    static Gate controlled(GateKind kind, std::vector<uint32_t> targets, std::vector<Control> controls);

    /// Largest qubit index mentioned, or -1 for an empty gate.
    int64_t max_qubit() const;
    /// Throws std::invalid_argument when targets/controls overlap or the kind's arity is wrong.
    void validate(size_t num_qubits) const;
    /// True for gates whose every elementary factor is a Pauli (X, Y, Z, CNOT, CZ, ...).
    bool is_pauli_like() const;
};

/// The per-target 2x2 matrix for single-qubit kinds (PHASE uses `angle_deg`).
Matrix2 single_qubit_matrix(GateKind kind, double angle_deg = 0);

/// Gates of kind CNOT/CZ/CCZ/MULTI_TARGET_CNOT rewritten as a single-qubit kind applied to a list
/// of targets with extra controls. Single-qubit kinds are returned unchanged.
struct ElementaryForm {
    GateKind kind;
    double angle_deg;
    std::vector<uint32_t> targets;
    std::vector<Control> controls;
};
ElementaryForm elementary_form(const Gate &gate);

std::string_view gate_kind_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);
std::string_view axis_name(Axis axis);

bool is_single_qubit_kind(GateKind kind);
bool is_diagonal_kind(GateKind kind);

}  // namespace magicfab

#endif
