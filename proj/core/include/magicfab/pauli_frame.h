#ifndef MAGICFAB_PAULI_FRAME_H
#define MAGICFAB_PAULI_FRAME_H

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "magicfab/circuit.h"

namespace magicfab {

/// Thrown when an error cannot be pushed through a gate as a Pauli (it hits the X side of a
/// non-Clifford gate, or toggles a classically controlled non-Pauli gate).
class FrameUnsupported : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Pauli operator up to phase, one (x, z) bit pair per qubit.
struct PauliFrame {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;

    explicit PauliFrame(size_t num_qubits) : x(num_qubits, 0), z(num_qubits, 0) {}

    bool anticommutes(uint32_t q, Axis axis) const;
    void multiply(uint32_t q, Axis axis);
    bool is_identity_on(const std::vector<uint32_t> &qubits) const;
};

struct FrameOutcome {
    bool accepted = true;
    /// Fidelity of the erroneous output with the reference, computed exactly from the output Pauli.
    double fidelity = 1;
    /// Which measurement results the errors flip relative to the error-free run.
    std::vector<uint8_t> record_flips;
    PauliFrame frame{0};
};

/// Propagates Z errors at the named injection sites through the circuit. Requires that the
/// error-free circuit is accepted on every branch with its output equal to the reference, which is
/// true for every factory built by this library. Throws FrameUnsupported when the propagation
/// leaves the Pauli group and std::invalid_argument for unknown sites.
FrameOutcome propagate_errors(const Circuit &circuit, const std::set<std::string> &injected_errors);

}  // namespace magicfab

#endif
