#ifndef MAGICFAB_CIRCUITS_H
#define MAGICFAB_CIRCUITS_H

#include <string>
#include <string_view>
#include <vector>

#include "magicfab/circuit.h"

namespace magicfab {

enum class ReferenceKind : uint8_t { T, CCZ, PHASE_PLUS };

/// Ideal states the factories are checked against. PHASE_PLUS uses `angle_deg`; T is PHASE_PLUS(45).
QuantumState reference_state(ReferenceKind kind, double angle_deg = 45);
/// `copies`-fold tensor power of a state.
QuantumState tensor_power(const QuantumState &state, size_t copies);

/// 15 noisy T states -> 1 T state, built on the punctured Reed-Muller code. Qubit 0 is the output;
/// qubit v (1..15) is the ancilla for the nonzero vector v of F_2^4. Four X-type checks plus the
/// logical X are measured as Pauli products, each ancilla receives a T, and the ancillas are read
/// out in the X basis.
Circuit build_fifteen_to_one();

/// 8 noisy T states -> 1 CCZ state. Outputs "1".."3" on qubits 0..2, ancillae "a".."h" on
/// qubits 3..10, and the four stabilizer qubits (X1abcd, Xabcdefgh, X3aceg, X2abef) on 11..14.
Circuit build_ccz_factory();

enum class C2TVariant : uint8_t {
    InternalT,   // the T^-1 is a labeled phase gate
    Teleported,  // the T^-1 is teleported in from a catalyst |T> on qubit 3
};

/// CCZ -> three T states using Clifford gates and one T^-1. The CCZ input is prepared on qubits 0..2.
Circuit build_c2t_simple(C2TVariant variant = C2TVariant::InternalT);

/// Lattice-surgery form of the C2T transformation: CCZ on qubits 0..2, catalyst T on 3, ancillae
/// S, B, A on 4..6 and stabilizer qubits on 7..11. See docs/circuits.md for the wiring table.
Circuit build_c2t_surgery();

/// Phase catalysis: applies PHASE(theta) to two data qubits (0, 1) using one AND computation, one
/// PHASE(2 theta) and a PHASE_PLUS(theta) catalyst on qubit 2 that is returned intact. Qubit 3 holds
/// the AND result. Throws std::invalid_argument unless 0 < theta <= 90.
Circuit build_phase_catalysis(double theta_deg);

/// Non-Clifford resource count of a circuit body (preparation excluded).
struct TCost {
    /// T-equivalents: odd multiples of 45 degrees count 1, an AND computation (X with two Z
    /// controls onto a fresh ancilla) counts 4, a CCZ counts 4.
    int t_count = 0;
    /// Phase rotations that are not multiples of 45 degrees.
    int arbitrary_rotations = 0;
};
TCost count_t_cost(const Circuit &circuit);

/// Names accepted by circuit_by_name.
std::vector<std::string> circuit_names();
/// "ccz8", "t15", "c2t-simple", "c2t-teleported", "c2t-surgery" or "phase" (uses theta_deg).
/// Throws std::invalid_argument for unknown names.
Circuit circuit_by_name(std::string_view name, double theta_deg = 22.5);

}  // namespace magicfab

#endif
