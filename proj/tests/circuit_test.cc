#include "magicfab/circuit.h"

#include <gtest/gtest.h>

using namespace magicfab;

namespace {

/// |+> measured in Z, then an X fix-up conditioned on the result: always ends in |0>.
Circuit reset_via_feedback() {
    Circuit c;
    c.name = "feedback";
    c.num_qubits = 1;
    c.ops.emplace_back(GateOp{Gate::single(GateKind::H, {0}), {}});
    c.ops.emplace_back(MeasureOp{{{0, Axis::Z}}, {}});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::X, {0}), {ClassicalCondition{{0}, false}}});
    c.outputs = {0};
    c.reference = QuantumState(1);
    return c;
}

}  // namespace

TEST(ClassicalCondition, XorParity) {
    std::vector<uint8_t> record{1, 0, 1, 1};
    EXPECT_FALSE((ClassicalCondition{{0, 2}, false}.evaluate(record)));
    EXPECT_TRUE((ClassicalCondition{{0, 1, 2, 3}, false}.evaluate(record)));
    EXPECT_TRUE((ClassicalCondition{{1}, true}.evaluate(record)));
    EXPECT_THROW((ClassicalCondition{{4}, false}.evaluate(record)), std::out_of_range);
}

TEST(Postselect, AcceptsEvenParity) {
    QuantumState s(1);
    s.push_record(1);
    s.push_record(1);
    s.push_record(0);
    EXPECT_EQ(postselect(s, {{0, 1}, false}), PostselectResult::Accepted);
    EXPECT_EQ(postselect(s, {{0, 2}, false}), PostselectResult::Rejected);
    EXPECT_EQ(postselect(s, {{0, 1}, true}), PostselectResult::Rejected);
    EXPECT_THROW(postselect(s, {{3}, false}), std::out_of_range);
}

TEST(Circuit, FeedbackResetsOnEveryBranch) {
    auto c = reset_via_feedback();
    double total = 0;
    for_each_branch(c, QuantumState(1), false, {}, [&](const RunOutcome &o, double p) {
        total += p;
        EXPECT_TRUE(o.accepted);
        EXPECT_NEAR(output_fidelity(c, o.state), 1, 1e-12);
    });
    EXPECT_NEAR(total, 1, 1e-12);
}

TEST(Circuit, BranchModes) {
    auto c = reset_via_feedback();
    RunOptions zero{.branch_mode = BranchMode::PreferZero};
    EXPECT_EQ(run_circuit(c, zero).record(), std::vector<uint8_t>{0});
    RunOptions one{.branch_mode = BranchMode::PreferOne};
    EXPECT_EQ(run_circuit(c, one).record(), std::vector<uint8_t>{1});
    RunOptions forced{.branch_mode = BranchMode::Forced, .forced_outcomes = {1}};
    EXPECT_EQ(run_circuit(c, forced).record(), std::vector<uint8_t>{1});
}

TEST(Circuit, SeededRunsReplay) {
    auto c = reset_via_feedback();
    for (uint64_t seed = 0; seed < 10; seed++) {
        RunOptions o{.seed = seed};
        EXPECT_EQ(run_circuit(c, o).record(), run_circuit(c, o).record());
    }
}

TEST(Circuit, SkippedMeasurementRecordsZero) {
    Circuit c;
    c.name = "skip";
    c.num_qubits = 1;
    c.ops.emplace_back(MeasureOp{{{0, Axis::Z}}, {}});
    c.ops.emplace_back(MeasureOp{{{0, Axis::X}}, {ClassicalCondition{{0}, false}}});
    c.ops.emplace_back(GateOp{Gate::single(GateKind::X, {0}), {}});
    c.ops.emplace_back(MeasureOp{{{0, Axis::Z}}, {}});
    auto out = run_circuit(c);
    EXPECT_EQ(out.record(), (std::vector<uint8_t>{0, 0, 1}));
}

TEST(Circuit, ValidateRejectsMalformed) {
    auto good = reset_via_feedback();
    good.validate();

    auto forward = good;
    std::get<GateOp>(forward.ops[2]).conditions = {ClassicalCondition{{1}, false}};
    EXPECT_THROW(forward.validate(), std::invalid_argument);

    auto dup = good;
    dup.ops.emplace_back(InjectOp{"a", 0, 45});
    dup.ops.emplace_back(InjectOp{"a", 0, 45});
    EXPECT_THROW(dup.validate(), std::invalid_argument);

    auto range = good;
    range.outputs = {3};
    EXPECT_THROW(range.validate(), std::invalid_argument);
}

TEST(Circuit, InjectionSites) {
    Circuit c;
    c.name = "sites";
    c.num_qubits = 2;
    c.ops.emplace_back(GateOp{Gate::single(GateKind::H, {0, 1}), {}});
    c.ops.emplace_back(InjectOp{"p", 0, 45});
    c.ops.emplace_back(InjectOp{"q", 1, 45});
    EXPECT_EQ(c.injection_sites(), (std::vector<std::string>{"p", "q"}));
    RunOptions bad{.injected_errors = {"r"}};
    EXPECT_THROW(run_circuit(c, bad), std::invalid_argument);

    // An injected error is a Z after the phase: |+> -> PHASE(45) then Z.
    RunOptions err{.injected_errors = {"p"}};
    auto s = run_circuit(c, err).state;
    QuantumState expected(2);
    expected.apply(Gate::single(GateKind::H, {0, 1}));
    expected.apply(Gate::phase(225, {0}));
    expected.apply(Gate::phase(45, {1}));
    EXPECT_NEAR(fidelity(s, expected), 1, 1e-12);
}

TEST(Circuit, RunOnSkipsPreparation) {
    Circuit c;
    c.name = "prep";
    c.num_qubits = 1;
    c.ops.emplace_back(GateOp{Gate::single(GateKind::X, {0}), {}});
    c.prep_length = 1;
    c.ops.emplace_back(MeasureOp{{{0, Axis::Z}}, {}});
    EXPECT_EQ(run_circuit(c).record(), std::vector<uint8_t>{1});
    EXPECT_EQ(run_circuit_on(c, QuantumState(1)).record(), std::vector<uint8_t>{0});
    EXPECT_THROW(run_circuit_on(c, QuantumState(2)), std::invalid_argument);
}
