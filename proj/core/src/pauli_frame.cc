#include "magicfab/pauli_frame.h"

#include <cmath>

namespace magicfab {

namespace {

bool is_multiple_of(double angle, double step) {
    double q = angle / step;
    return std::abs(q - std::round(q)) < 1e-9;
}

class FramePropagator {
   public:
    FramePropagator(const Circuit &circuit, const std::set<std::string> &errors)
        : circuit_(circuit), errors_(errors), frame_(circuit.num_qubits) {
    }

    FrameOutcome run() {
        FrameOutcome out;
        for (const auto &op : circuit_.ops) {
            if (const auto *g = std::get_if<GateOp>(&op)) {
                gate_op(*g);
            } else if (const auto *m = std::get_if<MeasureOp>(&op)) {
                measure_op(*m);
            } else if (const auto *ps = std::get_if<PostselectOp>(&op)) {
                if (toggled(ps->check)) {
                    out.accepted = false;
                }
            } else {
                const auto &inj = std::get<InjectOp>(op);
                phase(inj.qubit, inj.angle_deg);
                if (errors_.contains(inj.label)) {
                    frame_.multiply(inj.qubit, Axis::Z);
                }
            }
        }
        out.record_flips = flips_;
        out.fidelity = output_fidelity();
        out.frame = frame_;
        return out;
    }

   private:
    bool toggled(const ClassicalCondition &c) const {
        bool t = false;
        for (auto i : c.record_indices) {
            t ^= flips_.at(i) != 0;
        }
        return t;
    }

    void gate_op(const GateOp &op) {
        ElementaryForm e = elementary_form(op.gate);
        if (op.conditions.empty()) {
            conjugate(e);
            return;
        }
        size_t flipped = 0;
        for (const auto &c : op.conditions) {
            flipped += toggled(c);
        }
        // Whether a conditioned gate fires depends on the branch, so the frame must pass through it
        // unchanged; a toggled condition then multiplies the frame by the gate.
        PauliFrame before = frame_;
        conjugate(e);
        if (frame_.x != before.x || frame_.z != before.z) {
            throw FrameUnsupported("error does not commute with a classically controlled gate");
        }
        if (flipped == 0) {
            return;
        }
        if (op.conditions.size() > 1) {
            throw FrameUnsupported("error toggles one factor of a conjunctive condition");
        }
        if (!e.controls.empty() || !(e.kind == GateKind::X || e.kind == GateKind::Y || e.kind == GateKind::Z)) {
            throw FrameUnsupported("error toggles a classically controlled non-Pauli gate");
        }
        Axis axis = e.kind == GateKind::X ? Axis::X : e.kind == GateKind::Y ? Axis::Y : Axis::Z;
        for (auto t : e.targets) {
            frame_.multiply(t, axis);
        }
    }

    void measure_op(const MeasureOp &op) {
        bool flip = false;
        for (const auto &p : op.paulis) {
            flip ^= frame_.anticommutes(p.qubit, p.axis);
        }
        if (!op.conditions.empty()) {
            bool cond_flipped = false;
            for (const auto &c : op.conditions) {
                cond_flipped |= toggled(c);
            }
            if (flip || cond_flipped) {
                throw FrameUnsupported("error reaches a conditional measurement");
            }
        }
        flips_.push_back(flip);
    }

    void phase(uint32_t q, double angle_deg) {
        if (is_multiple_of(angle_deg, 180)) {
            return;
        }
        if (is_multiple_of(angle_deg, 90)) {
            frame_.z[q] ^= frame_.x[q];
            return;
        }
        if (frame_.x[q]) {
            throw FrameUnsupported("X error reaches a non-Clifford phase on qubit " + std::to_string(q));
        }
    }

    void single(GateKind kind, double angle_deg, uint32_t q) {
        switch (kind) {
            case GateKind::H:
                std::swap(frame_.x[q], frame_.z[q]);
                return;
            case GateKind::S:
            case GateKind::S_DAG:
                frame_.z[q] ^= frame_.x[q];
                return;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
                return;
            case GateKind::T:
                phase(q, 45);
                return;
            case GateKind::T_DAG:
                phase(q, -45);
                return;
            case GateKind::PHASE:
                phase(q, angle_deg);
                return;
            case GateKind::X_HALF:
            case GateKind::X_NEG_HALF:
                frame_.x[q] ^= frame_.z[q];
                return;
            default:
                throw std::logic_error("multi-qubit kind in elementary form");
        }
    }

    static Axis pauli_axis(GateKind kind) {
        switch (kind) {
            case GateKind::X:
                return Axis::X;
            case GateKind::Y:
                return Axis::Y;
            case GateKind::Z:
                return Axis::Z;
            default:
                throw FrameUnsupported("controlled gate is not a controlled Pauli");
        }
    }

    void conjugate(const ElementaryForm &e) {
        if (e.controls.empty()) {
            for (auto t : e.targets) {
                single(e.kind, e.angle_deg, t);
            }
            return;
        }
        if (e.controls.size() == 1) {
            // Controlled-P: anticommuting with P picks up the control's Pauli and vice versa.
            Axis p = pauli_axis(e.kind);
            const Control &c = e.controls[0];
            for (auto t : e.targets) {
                bool anti_t = frame_.anticommutes(t, p);
                bool anti_c = frame_.anticommutes(c.qubit, c.axis);
                if (anti_t) {
                    frame_.multiply(c.qubit, c.axis);
                }
                if (anti_c) {
                    frame_.multiply(t, p);
                }
            }
            return;
        }
        // Multi-controlled gates are non-Clifford; they are only transparent to errors that
        // commute with every control and with the target operator.
        bool commutes = true;
        for (const auto &c : e.controls) {
            commutes &= !frame_.anticommutes(c.qubit, c.axis);
        }
        bool diagonal_target = e.kind == GateKind::Z || e.kind == GateKind::S || e.kind == GateKind::S_DAG ||
                               e.kind == GateKind::T || e.kind == GateKind::T_DAG || e.kind == GateKind::PHASE;
        for (auto t : e.targets) {
            if (diagonal_target) {
                commutes &= !frame_.x[t];
            } else {
                commutes &= !frame_.anticommutes(t, pauli_axis(e.kind));
            }
        }
        if (!commutes) {
            throw FrameUnsupported("error does not commute with a multi-controlled gate");
        }
    }

    double output_fidelity() const {
        if (!circuit_.reference.has_value()) {
            return 1;
        }
        QuantumState moved = *circuit_.reference;
        std::vector<PauliTerm> terms;
        for (size_t k = 0; k < circuit_.outputs.size(); k++) {
            uint32_t q = circuit_.outputs[k];
            uint8_t x = frame_.x[q];
            uint8_t z = frame_.z[q];
            if (x || z) {
                terms.push_back({static_cast<uint32_t>(k), x && z ? Axis::Y : x ? Axis::X : Axis::Z});
            }
        }
        moved.apply_pauli_product(terms);
        return fidelity(moved, *circuit_.reference);
    }

    const Circuit &circuit_;
    const std::set<std::string> &errors_;
    PauliFrame frame_;
    std::vector<uint8_t> flips_;
};

}  // namespace

bool PauliFrame::anticommutes(uint32_t q, Axis axis) const {
    switch (axis) {
        case Axis::X:
            return z[q];
        case Axis::Z:
            return x[q];
        case Axis::Y:
            return x[q] ^ z[q];
    }
    return false;
}

void PauliFrame::multiply(uint32_t q, Axis axis) {
    if (axis != Axis::Z) {
        x[q] ^= 1;
    }
    if (axis != Axis::X) {
        z[q] ^= 1;
    }
}

bool PauliFrame::is_identity_on(const std::vector<uint32_t> &qubits) const {
    for (auto q : qubits) {
        if (x[q] || z[q]) {
            return false;
        }
    }
    return true;
}

FrameOutcome propagate_errors(const Circuit &circuit, const std::set<std::string> &injected_errors) {
    circuit.validate();
    auto sites = circuit.injection_sites();
    std::set<std::string> known(sites.begin(), sites.end());
    for (const auto &e : injected_errors) {
        if (!known.contains(e)) {
            throw std::invalid_argument("'" + e + "' is not an injection site of " + circuit.name);
        }
    }
    return FramePropagator(circuit, injected_errors).run();
}

}  // namespace magicfab
