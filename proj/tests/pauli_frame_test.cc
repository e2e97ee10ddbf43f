#include "magicfab/pauli_frame.h"

#include <gtest/gtest.h>

#include "magicfab/circuits.h"

using namespace magicfab;

namespace {

std::vector<PauliTerm> frame_terms(const PauliFrame &f) {
    std::vector<PauliTerm> terms;
    for (uint32_t q = 0; q < f.x.size(); q++) {
        if (f.x[q] && f.z[q]) {
            terms.push_back({q, Axis::Y});
        } else if (f.x[q]) {
            terms.push_back({q, Axis::X});
        } else if (f.z[q]) {
            terms.push_back({q, Axis::Z});
        }
    }
    return terms;
}

/// Random Clifford circuit with Clifford-angle injection sites and unconditional measurements.
Circuit random_clifford(size_t n, size_t length, std::mt19937_64 &rng) {
    Circuit c;
    c.name = "random";
    c.num_qubits = n;
    std::uniform_int_distribution<uint32_t> qubit(0, n - 1);
    std::uniform_int_distribution<int> pick(0, 10);
    int site = 0;
    for (size_t k = 0; k < length; k++) {
        uint32_t a = qubit(rng);
        uint32_t b = qubit(rng);
        while (b == a) b = qubit(rng);
        uint32_t d = qubit(rng);
        while (d == a || d == b) d = qubit(rng);
        switch (pick(rng)) {
            case 0: c.ops.emplace_back(GateOp{Gate::single(GateKind::H, {a}), {}}); break;
            case 1: c.ops.emplace_back(GateOp{Gate::single(GateKind::S, {a}), {}}); break;
            case 2: c.ops.emplace_back(GateOp{Gate::single(GateKind::X_NEG_HALF, {a}), {}}); break;
            case 3: c.ops.emplace_back(GateOp{Gate::cnot(a, b), {}}); break;
            case 4: c.ops.emplace_back(GateOp{Gate::cz(a, b), {}}); break;
            case 5:
                c.ops.emplace_back(GateOp{Gate::controlled(GateKind::Z, {b, d}, {Control{a, Axis::X, false}}), {}});
                break;
            case 6: c.ops.emplace_back(GateOp{Gate::multi_target_cnot(Control{a, Axis::Z, true}, {b, d}), {}}); break;
            case 7: c.ops.emplace_back(GateOp{Gate::controlled(GateKind::Y, {b}, {Control{a, Axis::X, true}}), {}}); break;
            case 8: c.ops.emplace_back(InjectOp{"s" + std::to_string(site++), a, site % 2 ? 90.0 : -90.0}); break;
            case 9: c.ops.emplace_back(MeasureOp{{{a, Axis::X}, {b, Axis::Z}}, {}}); break;
            case 10: c.ops.emplace_back(MeasureOp{{{a, Axis::Y}}, {}}); break;
        }
    }
    return c;
}

}  // namespace

TEST(PauliFrame, Basics) {
    PauliFrame f(2);
    EXPECT_TRUE(f.is_identity_on({0, 1}));
    f.multiply(0, Axis::Z);
    EXPECT_TRUE(f.anticommutes(0, Axis::X));
    EXPECT_TRUE(f.anticommutes(0, Axis::Y));
    EXPECT_FALSE(f.anticommutes(0, Axis::Z));
    f.multiply(0, Axis::X);
    EXPECT_FALSE(f.anticommutes(0, Axis::Y));
    EXPECT_TRUE(f.is_identity_on({1}));
}

TEST(PauliFrame, MatchesStateVectorOnRandomCliffordCircuits) {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 100; trial++) {
        auto c = random_clifford(4, 30, rng);
        auto sites = c.injection_sites();
        if (sites.empty()) continue;
        std::set<std::string> errors;
        for (const auto &s : sites) {
            if (rng() & 1) errors.insert(s);
        }
        auto frame = propagate_errors(c, errors);

        auto ideal = run_circuit(c, {.seed = rng()});
        std::vector<uint8_t> flipped = ideal.record();
        ASSERT_EQ(flipped.size(), frame.record_flips.size());
        for (size_t k = 0; k < flipped.size(); k++) flipped[k] ^= frame.record_flips[k];
        auto noisy = run_circuit(c, {.injected_errors = errors, .branch_mode = BranchMode::Forced, .forced_outcomes = flipped});

        auto expected = ideal.state;
        auto terms = frame_terms(frame.frame);
        if (!terms.empty()) expected.apply_pauli_product(terms);
        ASSERT_NEAR(fidelity(noisy.state, expected), 1, 1e-9) << "trial " << trial;
        checked++;
    }
    EXPECT_GT(checked, 50);
}

TEST(PauliFrame, XErrorOnTGateIsUnsupported) {
    Circuit c;
    c.name = "t-after-h";
    c.num_qubits = 1;
    c.ops.emplace_back(InjectOp{"z", 0, 0});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::H, {0}), {}});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::T, {0}), {}});
    EXPECT_THROW(propagate_errors(c, {"z"}), FrameUnsupported);
    EXPECT_NO_THROW(propagate_errors(c, {}));
}

TEST(PauliFrame, ToggledFeedbackMultipliesFrame) {
    // Z error before an X measurement flips the result, and the conditional Z fix-up then
    // cancels the error on the other qubit of a Bell pair.
    Circuit c;
    c.name = "feedback";
    c.num_qubits = 2;
    c.ops.emplace_back(InjectOp{"e", 0, 0});
    c.ops.emplace_back(MeasureOp{{{0, Axis::X}}, {}});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::Z, {1}), {ClassicalCondition{{0}, false}}});
    auto out = propagate_errors(c, {"e"});
    EXPECT_EQ(out.record_flips, std::vector<uint8_t>{1});
    EXPECT_EQ(out.frame.z, (std::vector<uint8_t>{1, 1}));
}

TEST(PauliFrame, ToggledNonPauliFeedbackIsUnsupported) {
    Circuit c;
    c.name = "s-feedback";
    c.num_qubits = 2;
    c.ops.emplace_back(InjectOp{"e", 0, 0});
    c.ops.emplace_back(MeasureOp{{{0, Axis::X}}, {}});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::S, {1}), {ClassicalCondition{{0}, false}}});
    EXPECT_THROW(propagate_errors(c, {"e"}), FrameUnsupported);
}

TEST(PauliFrame, CczFactoryPatterns) {
    auto c = build_ccz_factory();
    auto none = propagate_errors(c, {});
    EXPECT_TRUE(none.accepted);
    EXPECT_NEAR(none.fidelity, 1, 1e-12);
    EXPECT_FALSE(propagate_errors(c, {"a"}).accepted);
    auto pair = propagate_errors(c, {"a", "b"});
    EXPECT_TRUE(pair.accepted);
    EXPECT_LT(pair.fidelity, 0.5);
    EXPECT_THROW(propagate_errors(c, {"zz"}), std::invalid_argument);
}

TEST(PauliFrame, PhaseCatalysisNeedsStateVector) {
    EXPECT_THROW(propagate_errors(build_phase_catalysis(22.5), {"catalyst_missing"}), std::invalid_argument);
    EXPECT_THROW(propagate_errors(build_phase_catalysis(22.5), {"2theta"}), FrameUnsupported);
}
