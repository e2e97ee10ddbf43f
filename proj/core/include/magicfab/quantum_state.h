#ifndef MAGICFAB_QUANTUM_STATE_H
#define MAGICFAB_QUANTUM_STATE_H

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "magicfab/gate.h"

namespace magicfab {

/// One factor of a Pauli product: a qubit and the axis measured on it.
struct PauliTerm {
    uint32_t qubit;
    Axis axis;

    bool operator==(const PauliTerm &) const = default;
};

/// Bit-mask form of a Pauli product: X component, Z component and the number of Y factors.
struct PauliMasks {
    uint64_t x = 0;
    uint64_t z = 0;
    uint32_t y_count = 0;
};

/// Dense state vector over `num_qubits` qubits plus the classical record of measurement results.
///
/// Qubit k corresponds to bit k of the amplitude index (qubit 0 is the least significant bit).
class QuantumState {
   public:
    static constexpr size_t kMaxQubits = 24;

    /// The all-zeros basis state.
    explicit QuantumState(size_t num_qubits);
    /// Takes ownership of an explicit amplitude vector; its length must be a power of two.
    static QuantumState from_amplitudes(std::vector<Complex> amplitudes);

    size_t num_qubits() const { return num_qubits_; }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    Complex amplitude(uint64_t index) const { return amplitudes_[index]; }
    const std::vector<uint8_t> &record() const { return record_; }

    double norm_squared() const;
    void normalize();

    void apply(const Gate &gate);
    /// Applies the Pauli product in place (no projection). Used for error injection.
    void apply_pauli_product(std::span<const PauliTerm> paulis);

    /// Probability that measuring the Pauli product yields `outcome` (0 means eigenvalue +1).
    double outcome_probability(std::span<const PauliTerm> paulis, uint8_t outcome) const;

    /// Projects onto the (-1)^outcome eigenspace of the Pauli product, renormalizes and appends the
    /// outcome to the record. A forced outcome with zero probability throws std::domain_error.
    uint8_t measure_pauli_product(
        std::span<const PauliTerm> paulis, std::optional<uint8_t> forced, std::mt19937_64 &rng);
    /// Deterministic projection onto a given outcome; returns the branch probability. Throws
    /// std::domain_error when the projector annihilates the state.
    double project(std::span<const PauliTerm> paulis, uint8_t outcome);

    /// Appends a bit to the record without touching amplitudes (skipped conditional measurements).
    void push_record(uint8_t bit) { record_.push_back(bit); }

    /// Tensor product: `this` occupies the low qubits, `high` the qubits above them.
    QuantumState tensor(const QuantumState &high) const;

   private:
    QuantumState(size_t num_qubits, std::vector<Complex> amplitudes);
    void check_qubit(uint32_t q) const;
    PauliMasks masks_for(std::span<const PauliTerm> paulis) const;
    void apply_matrix(uint32_t target, const Matrix2 &m, uint64_t control_mask, uint64_t control_value);

    size_t num_qubits_;
    std::vector<Complex> amplitudes_;
    std::vector<uint8_t> record_;
};

/// |<a|b>|^2 for equal-size states (both assumed normalized).
double fidelity(const QuantumState &state, const QuantumState &reference);

/// <ref| rho_sub |ref>, where rho_sub is the reduced state of `state` on `qubits` (in the order
/// given; qubits[k] maps to bit k of the reference). Works for entangled states.
double subsystem_fidelity(
    const QuantumState &state, std::span<const uint32_t> qubits, const QuantumState &reference);

/// Reduced pure state of one qubit if it is unentangled with the rest (purity within `tol` of 1),
/// otherwise std::nullopt.
std::optional<QuantumState> extract_qubit(const QuantumState &state, uint32_t qubit, double tol = 1e-9);

/// (|0> + e^{i angle}|1>)/sqrt(2).
QuantumState phase_plus_state(double angle_deg);
/// The |T> = PHASE_PLUS(45) state.
QuantumState t_state();
/// CCZ applied to |+++>.
QuantumState ccz_state();
/// Haar-ish random state drawn from normal amplitudes.
QuantumState random_state(size_t num_qubits, std::mt19937_64 &rng);

}  // namespace magicfab

#endif
