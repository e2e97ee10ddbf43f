#include "magicfab/quantum_state.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace magicfab {

namespace {

constexpr double kZeroProbability = 1e-12;

void apply_single_pauli(std::vector<Complex> &amps, uint32_t q, Axis axis) {
    const uint64_t bit = uint64_t{1} << q;
    const uint64_t n = amps.size();
    switch (axis) {
        case Axis::Z:
            for (uint64_t i = bit; i < n; i = (i + 1) | bit) {
                amps[i] = -amps[i];
            }
            break;
        case Axis::X:
            for (uint64_t i = 0; i < n; i++) {
                if (!(i & bit)) {
                    std::swap(amps[i], amps[i | bit]);
                }
            }
            break;
        case Axis::Y:
            for (uint64_t i = 0; i < n; i++) {
                if (!(i & bit)) {
                    Complex a0 = amps[i];
                    Complex a1 = amps[i | bit];
                    amps[i] = Complex{0, -1} * a1;
                    amps[i | bit] = Complex{0, 1} * a0;
                }
            }
            break;
    }
}

}  // namespace

QuantumState::QuantumState(size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw std::invalid_argument("too many qubits for a dense state: " + std::to_string(num_qubits));
    }
    amplitudes_.assign(uint64_t{1} << num_qubits, Complex{0, 0});
    amplitudes_[0] = 1;
}

QuantumState::QuantumState(size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
}

QuantumState QuantumState::from_amplitudes(std::vector<Complex> amplitudes) {
    if (amplitudes.empty() || !std::has_single_bit(amplitudes.size())) {
        throw std::invalid_argument("amplitude vector length must be a power of two");
    }
    size_t n = std::countr_zero(amplitudes.size());
    if (n > kMaxQubits) {
        throw std::invalid_argument("too many qubits for a dense state");
    }
    return QuantumState(n, std::move(amplitudes));
}

double QuantumState::norm_squared() const {
    double t = 0;
    for (const auto &a : amplitudes_) {
        t += std::norm(a);
    }
    return t;
}

void QuantumState::normalize() {
    double n = std::sqrt(norm_squared());
    if (n == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    for (auto &a : amplitudes_) {
        a /= n;
    }
}

void QuantumState::check_qubit(uint32_t q) const {
    if (q >= num_qubits_) {
        throw std::out_of_range(
            "qubit " + std::to_string(q) + " out of range for a " + std::to_string(num_qubits_) + "-qubit state");
    }
}

void QuantumState::apply_matrix(uint32_t target, const Matrix2 &m, uint64_t control_mask, uint64_t control_value) {
    const uint64_t bit = uint64_t{1} << target;
    const uint64_t n = amplitudes_.size();
    const bool diagonal = m[1] == Complex{0} && m[2] == Complex{0};
    if (diagonal) {
        for (uint64_t i = 0; i < n; i++) {
            if ((i & control_mask) != control_value) {
                continue;
            }
            amplitudes_[i] *= (i & bit) ? m[3] : m[0];
        }
        return;
    }
    for (uint64_t i = 0; i < n; i++) {
        if ((i & bit) || (i & control_mask) != control_value) {
            continue;
        }
        Complex a0 = amplitudes_[i];
        Complex a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void QuantumState::apply(const Gate &gate) {
    gate.validate(num_qubits_);
    ElementaryForm e = elementary_form(gate);
    Matrix2 m = single_qubit_matrix(e.kind, e.angle_deg);

    static const Matrix2 kH = single_qubit_matrix(GateKind::H);
    uint64_t mask = 0;
    uint64_t value = 0;
    for (const auto &c : e.controls) {
        if (c.axis == Axis::X) {
            apply_matrix(c.qubit, kH, 0, 0);
        }
        mask |= uint64_t{1} << c.qubit;
        if (c.on_one) {
            value |= uint64_t{1} << c.qubit;
        }
    }
    for (auto t : e.targets) {
        apply_matrix(t, m, mask, value);
    }
    for (const auto &c : e.controls) {
        if (c.axis == Axis::X) {
            apply_matrix(c.qubit, kH, 0, 0);
        }
    }
}

void QuantumState::apply_pauli_product(std::span<const PauliTerm> paulis) {
    for (const auto &p : paulis) {
        check_qubit(p.qubit);
        apply_single_pauli(amplitudes_, p.qubit, p.axis);
    }
}

PauliMasks QuantumState::masks_for(std::span<const PauliTerm> paulis) const {
    if (paulis.empty()) {
        throw std::invalid_argument("empty Pauli product");
    }
    PauliMasks m;
    for (const auto &p : paulis) {
        check_qubit(p.qubit);
        const uint64_t bit = uint64_t{1} << p.qubit;
        if ((m.x | m.z) & bit) {
            throw std::invalid_argument("Pauli product names a qubit twice");
        }
        if (p.axis != Axis::Z) {
            m.x |= bit;
        }
        if (p.axis != Axis::X) {
            m.z |= bit;
        }
        if (p.axis == Axis::Y) {
            m.y_count++;
        }
    }
    return m;
}

namespace {

// P|i> = i^ny (-1)^{|i & z|} |i ^ x>.
Complex pauli_phase(const PauliMasks &m, uint64_t i) {
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Complex ph = kIPow[m.y_count & 3];
    return (std::popcount(i & m.z) & 1) ? -ph : ph;
}

}  // namespace

double QuantumState::outcome_probability(std::span<const PauliTerm> paulis, uint8_t outcome) const {
    PauliMasks m = masks_for(paulis);
    double expectation = 0;
    double norm = 0;
    for (uint64_t i = 0; i < amplitudes_.size(); i++) {
        const Complex &a = amplitudes_[i];
        norm += std::norm(a);
        if (a == Complex{0}) {
            continue;
        }
        // <psi|P|psi> summed over the image index i ^ x.
        expectation += (std::conj(amplitudes_[i ^ m.x]) * pauli_phase(m, i) * a).real();
    }
    double sign = outcome ? -1.0 : 1.0;
    return std::max(0.0, (norm + sign * expectation) / 2.0);
}

double QuantumState::project(std::span<const PauliTerm> paulis, uint8_t outcome) {
    PauliMasks m = masks_for(paulis);
    const double sign = outcome ? -1.0 : 1.0;
    double prob = 0;
    if (m.x == 0) {
        for (uint64_t i = 0; i < amplitudes_.size(); i++) {
            Complex &a = amplitudes_[i];
            a = (a + sign * pauli_phase(m, i) * a) * 0.5;
            prob += std::norm(a);
        }
    } else {
        const uint64_t top = uint64_t{1} << (63 - std::countl_zero(m.x));
        for (uint64_t i = 0; i < amplitudes_.size(); i++) {
            if (i & top) {
                continue;
            }
            const uint64_t j = i ^ m.x;
            Complex a = amplitudes_[i];
            Complex b = amplitudes_[j];
            // (P psi)[i] = phase(j) psi[j], (P psi)[j] = phase(i) psi[i].
            amplitudes_[i] = (a + sign * pauli_phase(m, j) * b) * 0.5;
            amplitudes_[j] = (b + sign * pauli_phase(m, i) * a) * 0.5;
            prob += std::norm(amplitudes_[i]) + std::norm(amplitudes_[j]);
        }
    }
    if (prob < kZeroProbability) {
        throw std::domain_error("measurement outcome has zero probability");
    }
    double scale = 1.0 / std::sqrt(prob);
    for (auto &a : amplitudes_) {
        a *= scale;
    }
    record_.push_back(outcome);
    return prob;
}

uint8_t QuantumState::measure_pauli_product(
    std::span<const PauliTerm> paulis, std::optional<uint8_t> forced, std::mt19937_64 &rng) {
    uint8_t outcome;
    if (forced.has_value()) {
        outcome = *forced ? 1 : 0;
    } else {
        double p0 = outcome_probability(paulis, 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        outcome = u(rng) < p0 ? 0 : 1;
    }
    project(paulis, outcome);
    return outcome;
}

QuantumState QuantumState::tensor(const QuantumState &high) const {
    size_t n = num_qubits_ + high.num_qubits_;
    if (n > kMaxQubits) {
        throw std::invalid_argument("tensor product too large");
    }
    std::vector<Complex> amps(uint64_t{1} << n);
    for (uint64_t h = 0; h < high.amplitudes_.size(); h++) {
        for (uint64_t l = 0; l < amplitudes_.size(); l++) {
            amps[(h << num_qubits_) | l] = amplitudes_[l] * high.amplitudes_[h];
        }
    }
    QuantumState out(n, std::move(amps));
    out.record_ = record_;
    return out;
}

double fidelity(const QuantumState &state, const QuantumState &reference) {
    if (state.num_qubits() != reference.num_qubits()) {
        throw std::invalid_argument("fidelity between states of different sizes");
    }
    Complex overlap = 0;
    auto a = state.amplitudes();
    auto b = reference.amplitudes();
    for (size_t i = 0; i < a.size(); i++) {
        overlap += std::conj(b[i]) * a[i];
    }
    return std::min(1.0, std::norm(overlap));
}

double subsystem_fidelity(
    const QuantumState &state, std::span<const uint32_t> qubits, const QuantumState &reference) {
    if (qubits.size() != reference.num_qubits()) {
        throw std::invalid_argument("subsystem size does not match the reference state");
    }
    uint64_t sub_mask = 0;
    for (auto q : qubits) {
        if (q >= state.num_qubits()) {
            throw std::out_of_range("subsystem qubit out of range");
        }
        sub_mask |= uint64_t{1} << q;
    }
    if (static_cast<size_t>(std::popcount(sub_mask)) != qubits.size()) {
        throw std::invalid_argument("subsystem lists a qubit twice");
    }

    // Overlap of the reference with each conditional slice of the rest of the system.
    std::vector<Complex> overlaps(state.amplitudes().size(), Complex{0});
    auto amps = state.amplitudes();
    auto ref = reference.amplitudes();
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (amps[i] == Complex{0}) {
            continue;
        }
        uint64_t k = 0;
        for (size_t j = 0; j < qubits.size(); j++) {
            k |= ((i >> qubits[j]) & 1) << j;
        }
        overlaps[i & ~sub_mask] += std::conj(ref[k]) * amps[i];
    }
    double total = 0;
    for (const auto &o : overlaps) {
        total += std::norm(o);
    }
    return std::min(1.0, total);
}

std::optional<QuantumState> extract_qubit(const QuantumState &state, uint32_t qubit, double tol) {
    if (qubit >= state.num_qubits()) {
        throw std::out_of_range("qubit out of range");
    }
    const uint64_t bit = uint64_t{1} << qubit;
    double r00 = 0;
    double r11 = 0;
    Complex r10 = 0;
    auto amps = state.amplitudes();
    for (uint64_t i = 0; i < amps.size(); i++) {
        if (i & bit) {
            continue;
        }
        r00 += std::norm(amps[i]);
        r11 += std::norm(amps[i | bit]);
        r10 += amps[i | bit] * std::conj(amps[i]);
    }
    double purity = r00 * r00 + r11 * r11 + 2 * std::norm(r10);
    if (std::abs(purity - 1.0) > tol) {
        return std::nullopt;
    }
    std::vector<Complex> v(2);
    if (r00 > 1e-12) {
        v[0] = std::sqrt(r00);
        v[1] = r10 / std::sqrt(r00);
    } else {
        v[1] = 1;
    }
    auto out = QuantumState::from_amplitudes(std::move(v));
    out.normalize();
    return out;
}

QuantumState phase_plus_state(double angle_deg) {
    QuantumState s(1);
    s.apply(Gate::single(GateKind::H, {0}));
    s.apply(Gate::phase(angle_deg, {0}));
    return s;
}

QuantumState t_state() {
    return phase_plus_state(45);
}

QuantumState ccz_state() {
    QuantumState s(3);
    s.apply(Gate::single(GateKind::H, {0, 1, 2}));
    s.apply(Gate::ccz(0, 1, 2));
    return s;
}

QuantumState random_state(size_t num_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> amps(uint64_t{1} << num_qubits);
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
    }
    auto s = QuantumState::from_amplitudes(std::move(amps));
    s.normalize();
    return s;
}

}  // namespace magicfab
