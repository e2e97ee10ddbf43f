#include "magicfab/gate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace magicfab {

namespace {

constexpr Complex I{0, 1};

struct KindInfo {
    GateKind kind;
    std::string_view name;
};

constexpr KindInfo kKinds[] = {
    {GateKind::H, "H"},
    {GateKind::X, "X"},
    {GateKind::Y, "Y"},
    {GateKind::Z, "Z"},
    {GateKind::S, "S"},
    {GateKind::S_DAG, "S_DAG"},
    {GateKind::T, "T"},
    {GateKind::T_DAG, "T_DAG"},
    {GateKind::PHASE, "PHASE"},
    {GateKind::X_HALF, "X_HALF"},
    {GateKind::X_NEG_HALF, "X_NEG_HALF"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::CZ, "CZ"},
    {GateKind::CCZ, "CCZ"},
    {GateKind::MULTI_TARGET_CNOT, "MULTI_TARGET_CNOT"},
};

Complex phase_of(double angle_deg) {
    double rad = angle_deg * std::numbers::pi / 180.0;
    return {std::cos(rad), std::sin(rad)};
}

}  // namespace

Gate Gate::single(GateKind kind, std::vector<uint32_t> targets) {
    if (!is_single_qubit_kind(kind)) {
        throw std::invalid_argument("Gate::single needs a single-qubit kind");
    }
    return Gate{kind, std::move(targets), {}, 0};
}

Gate Gate::phase(double angle_deg, std::vector<uint32_t> targets) {
    return Gate{GateKind::PHASE, std::move(targets), {}, angle_deg};
}

Gate Gate::cnot(uint32_t control, uint32_t target) {
    return Gate{GateKind::CNOT, {control, target}, {}, 0};
}

Gate Gate::cz(uint32_t a, uint32_t b) {
    return Gate{GateKind::CZ, {a, b}, {}, 0};
}

Gate Gate::ccz(uint32_t a, uint32_t b, uint32_t c) {
    return Gate{GateKind::CCZ, {a, b, c}, {}, 0};
}

Gate Gate::multi_target_cnot(Control control, std::vector<uint32_t> targets) {
    return Gate{GateKind::X, std::move(targets), {control}, 0};
}

Gate Gate::controlled(GateKind kind, std::vector<uint32_t> targets, std::vector<Control> controls) {
    if (!is_single_qubit_kind(kind)) {
        throw std::invalid_argument("Gate::controlled needs a single-qubit kind");
    }
    return Gate{kind, std::move(targets), std::move(controls), 0};
}

int64_t Gate::max_qubit() const {
    int64_t m = -1;
    for (auto t : targets) {
        m = std::max<int64_t>(m, t);
    }
    for (const auto &c : controls) {
        m = std::max<int64_t>(m, c.qubit);
    }
    return m;
}

void Gate::validate(size_t num_qubits) const {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
            if (targets.size() != 2) {
                throw std::invalid_argument(std::string(gate_kind_name(kind)) + " takes exactly 2 targets");
            }
            break;
        case GateKind::CCZ:
            if (targets.size() != 3) {
                throw std::invalid_argument("CCZ takes exactly 3 targets");
            }
            break;
        case GateKind::MULTI_TARGET_CNOT:
            if (targets.size() < 2) {
                throw std::invalid_argument("MULTI_TARGET_CNOT takes a control and at least one target");
            }
            break;
        default:
            if (targets.empty()) {
                throw std::invalid_argument("gate without targets");
            }
    }
    std::set<uint32_t> seen;
    for (auto t : targets) {
        if (t >= num_qubits) {
            throw std::out_of_range("gate target " + std::to_string(t) + " out of range");
        }
        if (!seen.insert(t).second) {
            throw std::invalid_argument("gate mentions qubit " + std::to_string(t) + " twice");
        }
    }
    for (const auto &c : controls) {
        if (c.qubit >= num_qubits) {
            throw std::out_of_range("gate control " + std::to_string(c.qubit) + " out of range");
        }
        if (c.axis == Axis::Y) {
            throw std::invalid_argument("controls must use the Z or X axis");
        }
        if (!seen.insert(c.qubit).second) {
            throw std::invalid_argument("control qubit " + std::to_string(c.qubit) + " overlaps a target");
        }
    }
}

bool Gate::is_pauli_like() const {
    auto e = elementary_form(*this);
    return e.kind == GateKind::X || e.kind == GateKind::Y || e.kind == GateKind::Z;
}

Matrix2 single_qubit_matrix(GateKind kind, double angle_deg) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -I, I, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::S:
            return {1, 0, 0, I};
        case GateKind::S_DAG:
            return {1, 0, 0, -I};
        case GateKind::T:
            return {1, 0, 0, phase_of(45)};
        case GateKind::T_DAG:
            return {1, 0, 0, phase_of(-45)};
        case GateKind::PHASE:
            return {1, 0, 0, phase_of(angle_deg)};
        case GateKind::X_HALF:
            return {(1.0 + I) / 2.0, (1.0 - I) / 2.0, (1.0 - I) / 2.0, (1.0 + I) / 2.0};
        case GateKind::X_NEG_HALF:
            return {(1.0 - I) / 2.0, (1.0 + I) / 2.0, (1.0 + I) / 2.0, (1.0 - I) / 2.0};
        default:
            throw std::invalid_argument("not a single-qubit gate kind: " + std::string(gate_kind_name(kind)));
    }
}

ElementaryForm elementary_form(const Gate &gate) {
    ElementaryForm e{gate.kind, gate.angle_deg, gate.targets, gate.controls};
    switch (gate.kind) {
        case GateKind::CNOT:
            e.kind = GateKind::X;
            e.targets = {gate.targets[1]};
            e.controls.push_back({gate.targets[0], Axis::Z, true});
            break;
        case GateKind::CZ:
            e.kind = GateKind::Z;
            e.targets = {gate.targets[1]};
            e.controls.push_back({gate.targets[0], Axis::Z, true});
            break;
        case GateKind::CCZ:
            e.kind = GateKind::Z;
            e.targets = {gate.targets[2]};
            e.controls.push_back({gate.targets[0], Axis::Z, true});
            e.controls.push_back({gate.targets[1], Axis::Z, true});
            break;
        case GateKind::MULTI_TARGET_CNOT:
            e.kind = GateKind::X;
            e.targets.assign(gate.targets.begin() + 1, gate.targets.end());
            e.controls.push_back({gate.targets[0], Axis::Z, true});
            break;
        default:
            break;
    }
    return e;
}

std::string_view gate_kind_name(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "?";
}

GateKind gate_kind_from_name(std::string_view name) {
    for (const auto &k : kKinds) {
        if (k.name == name) {
            return k.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

std::string_view axis_name(Axis axis) {
    switch (axis) {
        case Axis::X:
            return "X";
        case Axis::Y:
            return "Y";
        case Axis::Z:
            return "Z";
    }
    return "?";
}

bool is_single_qubit_kind(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CCZ:
        case GateKind::MULTI_TARGET_CNOT:
            return false;
        default:
            return true;
    }
}

bool is_diagonal_kind(GateKind kind) {
    switch (kind) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::S_DAG:
        case GateKind::T:
        case GateKind::T_DAG:
        case GateKind::PHASE:
        case GateKind::CZ:
        case GateKind::CCZ:
            return true;
        default:
            return false;
    }
}

}  // namespace magicfab
