#ifndef MAGICFAB_TESTS_TEST_UTIL_H
#define MAGICFAB_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>
#include <vector>

#include "magicfab/quantum_state.h"

namespace magicfab::test_util {

/// Pure state of `qubits` when `state` factorizes across them and the rest. Picks the rest
/// configuration with the largest weight and renormalizes that slice.
inline QuantumState slice_state(const QuantumState &state, const std::vector<uint32_t> &qubits) {
    uint64_t mask = 0;
    for (auto q : qubits) {
        mask |= uint64_t{1} << q;
    }
    auto amps = state.amplitudes();
    uint64_t best = 0;
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (std::norm(amps[i]) > std::norm(amps[best])) {
            best = i;
        }
    }
    uint64_t rest = best & ~mask;
    std::vector<Complex> out(uint64_t{1} << qubits.size());
    for (uint64_t k = 0; k < out.size(); k++) {
        uint64_t i = rest;
        for (size_t j = 0; j < qubits.size(); j++) {
            if ((k >> j) & 1) {
                i |= uint64_t{1} << qubits[j];
            }
        }
        out[k] = amps[i];
    }
    auto s = QuantumState::from_amplitudes(std::move(out));
    s.normalize();
    return s;
}

/// Dense 2^n x 2^n product of single-qubit matrices, computed the slow way as an oracle.
inline std::vector<Complex> apply_dense(
    const std::vector<Complex> &psi, size_t n, uint32_t target, const std::array<Complex, 4> &m) {
    std::vector<Complex> out(psi.size());
    for (uint64_t row = 0; row < psi.size(); row++) {
        for (uint64_t col = 0; col < psi.size(); col++) {
            if ((row & ~(uint64_t{1} << target)) != (col & ~(uint64_t{1} << target))) {
                continue;
            }
            int r = (row >> target) & 1;
            int c = (col >> target) & 1;
            out[row] += m[2 * r + c] * psi[col];
        }
    }
    (void)n;
    return out;
}

}  // namespace magicfab::test_util

#endif
