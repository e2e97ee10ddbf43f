#include "magicfab/circuits.h"

#include <cmath>
#include <stdexcept>

namespace magicfab {

namespace {

/// Small builder that keeps track of measurement record positions.
class CircuitBuilder {
   public:
    CircuitBuilder(std::string name, size_t num_qubits) {
        c_.name = std::move(name);
        c_.num_qubits = num_qubits;
    }

    void label(uint32_t q, std::string text) { c_.qubit_labels[q] = std::move(text); }

    void gate(Gate g, std::vector<ClassicalCondition> conditions = {}) {
        c_.ops.emplace_back(GateOp{std::move(g), std::move(conditions)});
    }

    void single(GateKind kind, std::vector<uint32_t> targets) { gate(Gate::single(kind, std::move(targets))); }

    size_t measure(std::vector<PauliTerm> paulis, std::vector<ClassicalCondition> conditions = {}) {
        c_.ops.emplace_back(MeasureOp{std::move(paulis), std::move(conditions)});
        return next_record_++;
    }

    size_t measure_z(uint32_t q) { return measure({{q, Axis::Z}}); }

    void inject(std::string label, uint32_t q, double angle_deg) {
        c_.ops.emplace_back(InjectOp{std::move(label), q, angle_deg});
    }

    void postselect(std::vector<size_t> parity) { c_.ops.emplace_back(PostselectOp{{std::move(parity), false}}); }

    void end_preparation() { c_.prep_length = c_.ops.size(); }

    Circuit finish(std::vector<uint32_t> outputs, QuantumState reference) {
        c_.outputs = std::move(outputs);
        c_.reference = std::move(reference);
        c_.validate();
        return std::move(c_);
    }

   private:
    Circuit c_;
    size_t next_record_ = 0;
};

ClassicalCondition when(std::vector<size_t> parity) {
    return ClassicalCondition{std::move(parity), false};
}

ClassicalCondition unless(std::vector<size_t> parity) {
    return ClassicalCondition{std::move(parity), true};
}

Control x_control(uint32_t q) {
    return Control{q, Axis::X, false};
}

Control z_control(uint32_t q, bool on_one = true) {
    return Control{q, Axis::Z, on_one};
}

double normalized_degrees(double a) {
    double r = std::fmod(a, 360.0);
    return r < 0 ? r + 360.0 : r;
}

bool is_multiple_of(double angle, double step) {
    double q = normalized_degrees(angle) / step;
    return std::abs(q - std::round(q)) < 1e-9;
}

void tally_phase(TCost &cost, double angle_deg) {
    if (is_multiple_of(angle_deg, 90)) {
        return;
    }
    if (is_multiple_of(angle_deg, 45)) {
        cost.t_count += 1;
    } else {
        cost.arbitrary_rotations += 1;
    }
}

}  // namespace

QuantumState reference_state(ReferenceKind kind, double angle_deg) {
    switch (kind) {
        case ReferenceKind::T:
            return t_state();
        case ReferenceKind::CCZ:
            return ccz_state();
        case ReferenceKind::PHASE_PLUS:
            return phase_plus_state(angle_deg);
    }
    throw std::invalid_argument("unknown reference kind");
}

QuantumState tensor_power(const QuantumState &state, size_t copies) {
    if (copies == 0) {
        throw std::invalid_argument("tensor power needs at least one copy");
    }
    QuantumState out = state;
    for (size_t k = 1; k < copies; k++) {
        out = out.tensor(state);
    }
    return out;
}

Circuit build_fifteen_to_one() {
    CircuitBuilder b("t15", 16);
    b.label(0, "out");
    std::vector<uint32_t> ancillae;
    for (uint32_t v = 1; v <= 15; v++) {
        b.label(v, "t" + std::to_string(v));
        ancillae.push_back(v);
    }

    // Logical X (output + all ancillae), then the four weight-8 X checks of the code.
    std::vector<PauliTerm> logical{{0, Axis::X}};
    for (auto v : ancillae) {
        logical.push_back({v, Axis::X});
    }
    size_t logical_bit = b.measure(logical);
    std::vector<size_t> check_bits;
    for (uint32_t i = 0; i < 4; i++) {
        std::vector<PauliTerm> check;
        for (auto v : ancillae) {
            if ((v >> i) & 1) {
                check.push_back({v, Axis::X});
            }
        }
        check_bits.push_back(b.measure(check));
    }

    for (auto v : ancillae) {
        b.inject("t" + std::to_string(v), v, 45);
    }
    b.single(GateKind::H, ancillae);
    std::vector<size_t> readout(16);
    for (auto v : ancillae) {
        readout[v] = b.measure_z(v);
    }

    std::vector<size_t> fix{logical_bit};
    for (auto v : ancillae) {
        fix.push_back(readout[v]);
    }
    b.gate(Gate::single(GateKind::Z, {0}), {when(fix)});
    for (uint32_t i = 0; i < 4; i++) {
        std::vector<size_t> parity{check_bits[i]};
        for (auto v : ancillae) {
            if ((v >> i) & 1) {
                parity.push_back(readout[v]);
            }
        }
        b.postselect(parity);
    }
    // Undoes the X-basis frame of the output so it carries T rather than T^-1.
    b.single(GateKind::X, {0});
    return b.finish({0}, t_state());
}

Circuit build_ccz_factory() {
    CircuitBuilder b("ccz8", 15);
    const char *outputs[] = {"1", "2", "3"};
    const char *ancilla_names[] = {"a", "b", "c", "d", "e", "f", "g", "h"};
    for (uint32_t q = 0; q < 3; q++) {
        b.label(q, outputs[q]);
    }
    for (uint32_t k = 0; k < 8; k++) {
        b.label(3 + k, ancilla_names[k]);
    }

    // Output j (0-based) participates in ancilla k's phase iff bit j of kSubsets[k] is set.
    // a = {1,2,3}, b = {1,2}, c = {1,3}, d = {1}, e = {2,3}, f = {2}, g = {3}, h = {}.
    constexpr uint32_t kSubsets[8] = {0b111, 0b011, 0b101, 0b001, 0b110, 0b010, 0b100, 0b000};

    // Stabilizer qubits in the order they are measured: X_1abcd, X_abcdefgh, X_3aceg, X_2abef.
    struct Stabilizer {
        uint32_t qubit;
        int output;  // -1 for the all-ancilla check
        const char *name;
    };
    const Stabilizer stabilizers[] = {
        {11, 0, "X1abcd"},
        {12, -1, "Xabcdefgh"},
        {13, 2, "X3aceg"},
        {14, 1, "X2abef"},
    };
    for (const auto &s : stabilizers) {
        b.label(s.qubit, s.name);
        std::vector<uint32_t> targets;
        if (s.output >= 0) {
            targets.push_back(s.output);
        }
        for (uint32_t k = 0; k < 8; k++) {
            if (s.output < 0 || ((kSubsets[k] >> s.output) & 1)) {
                targets.push_back(3 + k);
            }
        }
        b.gate(Gate::controlled(GateKind::X, targets, {x_control(s.qubit)}));
    }
    size_t stab_bit[4];
    for (int k = 0; k < 4; k++) {
        stab_bit[k] = b.measure_z(stabilizers[k].qubit);
    }

    std::vector<uint32_t> ancillae;
    for (uint32_t k = 0; k < 8; k++) {
        b.inject(ancilla_names[k], 3 + k, 45);
        ancillae.push_back(3 + k);
    }
    b.single(GateKind::H, ancillae);
    size_t anc_bit[8];
    for (uint32_t k = 0; k < 8; k++) {
        anc_bit[k] = b.measure_z(3 + k);
    }

    // Z fixups: output j flips with its stabilizer result and with every ancilla whose subset holds j.
    const size_t output_stab[3] = {stab_bit[0], stab_bit[3], stab_bit[2]};
    for (uint32_t j = 0; j < 3; j++) {
        std::vector<size_t> parity{output_stab[j]};
        for (uint32_t k = 0; k < 8; k++) {
            if ((kSubsets[k] >> j) & 1) {
                parity.push_back(anc_bit[k]);
            }
        }
        b.gate(Gate::single(GateKind::Z, {j}), {when(parity)});
    }
    std::vector<size_t> check{stab_bit[1]};
    for (auto bit : anc_bit) {
        check.push_back(bit);
    }
    b.postselect(check);
    b.single(GateKind::X, {0, 1, 2});
    return b.finish({0, 1, 2}, ccz_state());
}

Circuit build_c2t_simple(C2TVariant variant) {
    bool teleported = variant == C2TVariant::Teleported;
    CircuitBuilder b(teleported ? "c2t-teleported" : "c2t-simple", teleported ? 4 : 3);
    b.label(0, "1");
    b.label(1, "2");
    b.label(2, "3");
    b.single(GateKind::H, {0, 1, 2});
    b.gate(Gate::ccz(0, 1, 2));
    if (teleported) {
        b.label(3, "catalyst");
        b.single(GateKind::H, {3});
        b.inject("catalyst", 3, 45);
    }
    b.end_preparation();

    b.single(GateKind::X_NEG_HALF, {2});
    b.gate(Gate::controlled(GateKind::X, {0, 1}, {z_control(2, false)}));
    b.gate(Gate::controlled(GateKind::Z, {0, 1}, {x_control(2)}));
    if (teleported) {
        // T^-1 by teleportation from the catalyst: the ZZ parity picks T or T^-1, S^-1 repairs the former.
        size_t parity = b.measure({{2, Axis::Z}, {3, Axis::Z}});
        size_t readout = b.measure({{3, Axis::X}});
        b.gate(Gate::single(GateKind::Z, {2}), {when({readout})});
        b.gate(Gate::single(GateKind::S_DAG, {2}), {unless({parity})});
    } else {
        b.inject("T", 2, -45);
    }
    b.gate(Gate::controlled(GateKind::Z, {0, 1}, {x_control(2)}));
    return b.finish({0, 1, 2}, tensor_power(t_state(), 3));
}

Circuit build_c2t_surgery() {
    CircuitBuilder b("c2t-surgery", 12);
    const char *labels[] = {"1", "2", "3", "catalyst", "S", "B", "A", "X3B", "X12A", "Z123c", "Z3A", "Z123S"};
    for (uint32_t q = 0; q < 12; q++) {
        b.label(q, labels[q]);
    }
    b.single(GateKind::H, {0, 1, 2, 3});
    b.inject("catalyst", 3, 45);
    b.gate(Gate::ccz(0, 1, 2));
    b.end_preparation();

    // X_3 X_B and X_1 X_2 X_A parity measurements through stabilizer qubits.
    b.gate(Gate::controlled(GateKind::X, {2, 5}, {x_control(7)}));
    size_t m_x3b = b.measure_z(7);
    b.gate(Gate::controlled(GateKind::X, {0, 1, 6}, {x_control(8)}));
    size_t m_x12a = b.measure_z(8);
    b.single(GateKind::X_HALF, {5});
    // Z_1 Z_2 Z_3 Z_catalyst parity: teleports the T^-1 out of the catalyst.
    b.gate(Gate::controlled(GateKind::Z, {0, 1, 2, 3}, {x_control(9)}));
    b.single(GateKind::H, {3});
    size_t m_cat = b.measure_z(3);
    size_t m_b = b.measure_z(5);
    size_t m_z123c = b.measure_z(9);

    b.single(GateKind::X_NEG_HALF, {4});
    b.gate(Gate::controlled(GateKind::Z, {2, 6}, {x_control(10)}));
    b.single(GateKind::H, {6});
    size_t m_a = b.measure_z(6);
    size_t m_z3a = b.measure_z(10);

    // Frame-adjusted bits: the B readout is flipped by the X_3 X_B result, and the catalyst parity
    // by both.
    const std::vector<size_t> b_frame{m_b, m_x3b};
    const std::vector<size_t> t_frame{m_z123c, m_b, m_x3b};

    // S correction of the teleported T^-1, only needed when the parity came out odd.
    b.gate(Gate::controlled(GateKind::Z, {0, 1, 2, 4}, {x_control(11)}), {when(t_frame)});
    b.single(GateKind::H, {4});
    size_t m_s = b.measure_z(4);
    size_t m_z123s = b.measure_z(11);

    b.gate(Gate::single(GateKind::Z, {0, 1, 2}), {when(t_frame), when({m_z123s})});
    b.gate(Gate::single(GateKind::Z, {0, 1, 2}), {when(b_frame), when(t_frame)});
    b.gate(Gate::single(GateKind::Z, {0, 1, 2}), {when({m_s}), when(t_frame)});
    b.gate(Gate::single(GateKind::Z, {2}), {when({m_x12a})});
    b.gate(Gate::single(GateKind::Z, {2}), {when({m_a})});
    b.gate(Gate::single(GateKind::Z, {0, 1, 2}), {when({m_cat})});
    b.gate(Gate::single(GateKind::X, {0, 1}), {when({m_z3a})});
    b.gate(Gate::single(GateKind::X, {0, 1, 2}), {when(b_frame)});
    b.single(GateKind::X, {2});
    return b.finish({0, 1, 2}, tensor_power(t_state(), 3));
}

Circuit build_phase_catalysis(double theta_deg) {
    if (!(theta_deg > 0 && theta_deg <= 90)) {
        throw std::invalid_argument("phase catalysis angle must lie in (0, 90] degrees");
    }
    CircuitBuilder b("phase", 4);
    b.label(0, "d1");
    b.label(1, "d2");
    b.label(2, "catalyst");
    b.label(3, "and");
    b.single(GateKind::H, {0, 1, 2});
    b.gate(Gate::phase(theta_deg, {2}));
    b.end_preparation();

    // Data bits become d ^ !c; the AND of the two, xored with !c, is maj(d1, d2, !c).
    b.single(GateKind::X, {2});
    b.gate(Gate::cnot(2, 0));
    b.gate(Gate::cnot(2, 1));
    b.gate(Gate::controlled(GateKind::X, {3}, {z_control(0), z_control(1)}));
    b.gate(Gate::cnot(2, 3));
    b.inject("2theta", 3, 2 * theta_deg);
    b.gate(Gate::cnot(2, 3));
    // Measurement-based uncomputation of the AND.
    b.single(GateKind::H, {3});
    size_t m = b.measure_z(3);
    b.gate(Gate::cz(0, 1), {when({m})});
    b.gate(Gate::cnot(2, 0));
    b.gate(Gate::cnot(2, 1));
    // Catalyst register becomes d1 ^ d2 ^ c.
    b.gate(Gate::cnot(0, 2));
    b.gate(Gate::cnot(1, 2));
    b.single(GateKind::X, {2});
    return b.finish({0, 1, 2}, tensor_power(phase_plus_state(theta_deg), 3));
}

TCost count_t_cost(const Circuit &circuit) {
    TCost cost;
    for (size_t k = circuit.prep_length; k < circuit.ops.size(); k++) {
        const Op &op = circuit.ops[k];
        if (const auto *inj = std::get_if<InjectOp>(&op)) {
            tally_phase(cost, inj->angle_deg);
            continue;
        }
        const auto *g = std::get_if<GateOp>(&op);
        if (g == nullptr) {
            continue;
        }
        ElementaryForm e = elementary_form(g->gate);
        size_t n = e.targets.size();
        if (e.kind == GateKind::T || e.kind == GateKind::T_DAG) {
            cost.t_count += static_cast<int>(n);
        } else if (e.kind == GateKind::PHASE) {
            for (size_t t = 0; t < n; t++) {
                tally_phase(cost, e.angle_deg);
            }
        }
        if (e.controls.size() >= 2) {
            if (e.controls.size() == 2 && n == 1 && (e.kind == GateKind::X || e.kind == GateKind::Z)) {
                cost.t_count += 4;
            } else {
                throw std::invalid_argument("no T-cost rule for a gate with more than two controls");
            }
        }
    }
    return cost;
}

std::vector<std::string> circuit_names() {
    return {"ccz8", "t15", "c2t-simple", "c2t-teleported", "c2t-surgery", "phase"};
}

Circuit circuit_by_name(std::string_view name, double theta_deg) {
    if (name == "ccz8") {
        return build_ccz_factory();
    }
    if (name == "t15") {
        return build_fifteen_to_one();
    }
    if (name == "c2t-simple") {
        return build_c2t_simple(C2TVariant::InternalT);
    }
    if (name == "c2t-teleported") {
        return build_c2t_simple(C2TVariant::Teleported);
    }
    if (name == "c2t-surgery") {
        return build_c2t_surgery();
    }
    if (name == "phase") {
        return build_phase_catalysis(theta_deg);
    }
    throw std::invalid_argument("unknown circuit '" + std::string(name) + "'");
}

}  // namespace magicfab
