#include "magicfab/circuit_io.h"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace magicfab {

namespace {

constexpr int kFormatVersion = 1;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_condition(const ClassicalCondition &c, std::string_view prefix) {
    std::string s(prefix);
    if (c.negate) {
        s += '!';
    }
    s += '[';
    for (size_t k = 0; k < c.record_indices.size(); k++) {
        if (k) {
            s += ',';
        }
        s += std::to_string(c.record_indices[k]);
    }
    s += ']';
    return s;
}

std::string format_pauli(Axis axis, uint32_t qubit) {
    return std::string(axis_name(axis)) + std::to_string(qubit);
}

class LineError : public std::invalid_argument {
   public:
    LineError(size_t line, const std::string &what)
        : std::invalid_argument("circuit text line " + std::to_string(line) + ": " + what) {
    }
};

uint64_t parse_uint(std::string_view s, size_t line) {
    uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw LineError(line, "expected a nonnegative integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s, size_t line) {
    std::string tmp(s);
    char *end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw LineError(line, "expected a number, got '" + tmp + "'");
    }
    return v;
}

Axis parse_axis(char c, size_t line) {
    switch (c) {
        case 'X':
            return Axis::X;
        case 'Y':
            return Axis::Y;
        case 'Z':
            return Axis::Z;
    }
    throw LineError(line, std::string("unknown axis '") + c + "'");
}

PauliTerm parse_pauli(std::string_view tok, size_t line) {
    if (tok.size() < 2) {
        throw LineError(line, "bad Pauli term '" + std::string(tok) + "'");
    }
    return {static_cast<uint32_t>(parse_uint(tok.substr(1), line)), parse_axis(tok[0], line)};
}

// Parses `[i,j,k]` or `![i,j,k]`.
ClassicalCondition parse_parity(std::string_view tok, size_t line) {
    ClassicalCondition c;
    if (!tok.empty() && tok[0] == '!') {
        c.negate = true;
        tok.remove_prefix(1);
    }
    if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']') {
        throw LineError(line, "bad parity '" + std::string(tok) + "'");
    }
    tok = tok.substr(1, tok.size() - 2);
    while (!tok.empty()) {
        size_t comma = tok.find(',');
        c.record_indices.push_back(parse_uint(tok.substr(0, comma), line));
        if (comma == std::string_view::npos) {
            break;
        }
        tok.remove_prefix(comma + 1);
    }
    return c;
}

std::vector<std::string> split(const std::string &line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

}  // namespace

std::string circuit_to_text(const Circuit &circuit) {
    std::ostringstream out;
    out << "magicfab-circuit " << kFormatVersion << "\n";
    out << "name " << circuit.name << "\n";
    out << "qubits " << circuit.num_qubits << "\n";
    for (const auto &[q, label] : circuit.qubit_labels) {
        out << "label " << q << " " << label << "\n";
    }
    out << "outputs";
    for (auto q : circuit.outputs) {
        out << " " << q;
    }
    out << "\n";
    out << "prep " << circuit.prep_length << "\n";
    if (circuit.reference.has_value()) {
        auto amps = circuit.reference->amplitudes();
        out << "reference " << amps.size();
        for (const auto &a : amps) {
            out << " " << format_double(a.real()) << " " << format_double(a.imag());
        }
        out << "\n";
    }
    for (const auto &op : circuit.ops) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            out << "gate " << gate_kind_name(g->gate.kind);
            if (g->gate.kind == GateKind::PHASE) {
                out << "(" << format_double(g->gate.angle_deg) << ")";
            }
            for (auto t : g->gate.targets) {
                out << " " << t;
            }
            if (!g->gate.controls.empty()) {
                out << " ctrl";
                for (const auto &c : g->gate.controls) {
                    out << " " << (c.on_one ? "" : "!") << format_pauli(c.axis, c.qubit);
                }
            }
            for (const auto &c : g->conditions) {
                out << " " << format_condition(c, "if");
            }
        } else if (const auto *m = std::get_if<MeasureOp>(&op)) {
            out << "measure";
            for (const auto &p : m->paulis) {
                out << " " << format_pauli(p.axis, p.qubit);
            }
            for (const auto &c : m->conditions) {
                out << " " << format_condition(c, "if");
            }
        } else if (const auto *ps = std::get_if<PostselectOp>(&op)) {
            out << "postselect " << format_condition(ps->check, "");
        } else {
            const auto &inj = std::get<InjectOp>(op);
            out << "inject " << inj.label << " " << inj.qubit << " " << format_double(inj.angle_deg);
        }
        out << "\n";
    }
    return out.str();
}

Circuit circuit_from_text(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t line = 0;
    bool header = false;
    while (std::getline(in, raw)) {
        line++;
        auto toks = split(raw);
        if (toks.empty() || toks[0][0] == '#') {
            continue;
        }
        const std::string &kw = toks[0];
        if (!header) {
            if (kw != "magicfab-circuit" || toks.size() != 2) {
                throw LineError(line, "missing 'magicfab-circuit <version>' header");
            }
            if (parse_uint(toks[1], line) != static_cast<uint64_t>(kFormatVersion)) {
                throw LineError(line, "unsupported format version " + toks[1]);
            }
            header = true;
            continue;
        }
        if (kw == "name" && toks.size() == 2) {
            c.name = toks[1];
        } else if (kw == "qubits" && toks.size() == 2) {
            c.num_qubits = parse_uint(toks[1], line);
        } else if (kw == "label" && toks.size() == 3) {
            c.qubit_labels[static_cast<uint32_t>(parse_uint(toks[1], line))] = toks[2];
        } else if (kw == "outputs") {
            for (size_t k = 1; k < toks.size(); k++) {
                c.outputs.push_back(static_cast<uint32_t>(parse_uint(toks[k], line)));
            }
        } else if (kw == "prep" && toks.size() == 2) {
            c.prep_length = parse_uint(toks[1], line);
        } else if (kw == "reference" && toks.size() >= 2) {
            size_t n = parse_uint(toks[1], line);
            if (toks.size() != 2 + 2 * n) {
                throw LineError(line, "reference amplitude count mismatch");
            }
            std::vector<Complex> amps(n);
            for (size_t k = 0; k < n; k++) {
                amps[k] = {parse_double(toks[2 + 2 * k], line), parse_double(toks[3 + 2 * k], line)};
            }
            try {
                c.reference = QuantumState::from_amplitudes(std::move(amps));
            } catch (const std::invalid_argument &e) {
                throw LineError(line, e.what());
            }
        } else if (kw == "gate" && toks.size() >= 2) {
            GateOp g{};
            std::string kind = toks[1];
            double angle = 0;
            if (auto open = kind.find('('); open != std::string::npos) {
                if (kind.back() != ')') {
                    throw LineError(line, "bad angle in '" + kind + "'");
                }
                angle = parse_double(std::string_view(kind).substr(open + 1, kind.size() - open - 2), line);
                kind = kind.substr(0, open);
            }
            try {
                g.gate.kind = gate_kind_from_name(kind);
            } catch (const std::invalid_argument &e) {
                throw LineError(line, e.what());
            }
            g.gate.angle_deg = angle;
            size_t k = 2;
            for (; k < toks.size() && toks[k] != "ctrl" && toks[k].rfind("if", 0) != 0; k++) {
                g.gate.targets.push_back(static_cast<uint32_t>(parse_uint(toks[k], line)));
            }
            if (k < toks.size() && toks[k] == "ctrl") {
                for (k++; k < toks.size() && toks[k].rfind("if", 0) != 0; k++) {
                    std::string_view t = toks[k];
                    bool on_one = true;
                    if (t[0] == '!') {
                        on_one = false;
                        t.remove_prefix(1);
                    }
                    PauliTerm p = parse_pauli(t, line);
                    g.gate.controls.push_back(Control{p.qubit, p.axis, on_one});
                }
            }
            for (; k < toks.size(); k++) {
                g.conditions.push_back(parse_parity(std::string_view(toks[k]).substr(2), line));
            }
            try {
                g.gate.validate(c.num_qubits);
            } catch (const std::logic_error &e) {
                throw LineError(line, e.what());
            }
            c.ops.emplace_back(std::move(g));
        } else if (kw == "measure" && toks.size() >= 2) {
            MeasureOp m;
            size_t k = 1;
            for (; k < toks.size() && toks[k].rfind("if", 0) != 0; k++) {
                m.paulis.push_back(parse_pauli(toks[k], line));
            }
            for (; k < toks.size(); k++) {
                m.conditions.push_back(parse_parity(std::string_view(toks[k]).substr(2), line));
            }
            c.ops.emplace_back(std::move(m));
        } else if (kw == "postselect" && toks.size() == 2) {
            c.ops.emplace_back(PostselectOp{parse_parity(toks[1], line)});
        } else if (kw == "inject" && toks.size() == 4) {
            c.ops.emplace_back(InjectOp{toks[1], static_cast<uint32_t>(parse_uint(toks[2], line)),
                                        parse_double(toks[3], line)});
        } else {
            throw LineError(line, "unrecognized line '" + raw + "'");
        }
    }
    if (!header) {
        throw std::invalid_argument("empty circuit text");
    }
    try {
        c.validate();
    } catch (const std::out_of_range &e) {
        throw std::invalid_argument(e.what());
    }
    return c;
}

}  // namespace magicfab
