#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "magicfab/circuit_io.h"
#include "magicfab/circuits.h"
#include "magicfab/json_io.h"

using namespace magicfab;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CircuitText, RoundTripsEveryBuilder) {
    for (const auto &name : circuit_names()) {
        auto c = circuit_by_name(name);
        auto text = circuit_to_text(c);
        EXPECT_EQ(circuit_from_text(text), c) << name;
        EXPECT_EQ(circuit_to_text(circuit_from_text(text)), text) << name;
    }
}

TEST(CircuitText, MatchesGoldenFiles) {
    for (const auto &name : circuit_names()) {
        auto golden = read_file(std::string(MAGICFAB_GOLDEN_DIR) + "/" + name + ".txt");
        ASSERT_FALSE(golden.empty()) << name;
        EXPECT_EQ(circuit_to_text(circuit_by_name(name)), golden) << name;
    }
}

TEST(CircuitText, ParsedCircuitStillWorks) {
    auto c = circuit_from_text(circuit_to_text(build_c2t_surgery()));
    for (uint64_t seed = 0; seed < 20; seed++) {
        auto out = run_circuit(c, {.seed = seed});
        EXPECT_TRUE(out.accepted);
        EXPECT_GE(output_fidelity(c, out.state), 1 - 1e-9);
    }
}

TEST(CircuitText, RejectsMalformedInput) {
    const char *bad[] = {
        "",
        "magicfab-circuit 2\nname x\nqubits 1\n",
        "magicfab-circuit 1\nname x\nqubits 1\ngate FOO 0\n",
        "magicfab-circuit 1\nname x\nqubits 1\ngate H 5\n",
        "magicfab-circuit 1\nname x\nqubits 1\nmeasure Q0\n",
        "magicfab-circuit 1\nname x\nqubits 1\nmeasure Z0 if[3]\n",
        "magicfab-circuit 1\nname x\nqubits 1\npostselect [0\n",
        "magicfab-circuit 1\nname x\nqubits two\n",
        "magicfab-circuit 1\nname x\nqubits 1\nwobble\n",
    };
    for (const char *text : bad) {
        EXPECT_THROW(circuit_from_text(text), std::invalid_argument) << text;
    }
}

TEST(CircuitText, ErrorNamesTheLine) {
    try {
        circuit_from_text("magicfab-circuit 1\nname x\nqubits 1\ngate H 0\ngate FOO 0\n");
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos) << e.what();
    }
}

TEST(Json, InjectionReportRoundTrip) {
    auto report = enumerate_errors(build_ccz_factory(), 2);
    EXPECT_EQ(injection_report_from_json(to_json(report)), report);
}

TEST(Json, ResourceEstimateRoundTrip) {
    PhysicalAssumptions a;
    auto e = estimate(factoring_workload(1024), FactoryModel::ccz(), Regime::MinimalDistance, {}, a);
    EXPECT_EQ(resource_estimate_from_json(to_json(e)), e);
    auto zero = estimate(Workload{}, FactoryModel::ccz(), Regime::DistillationLimited, {}, a);
    EXPECT_EQ(resource_estimate_from_json(to_json(zero)), zero);
}

TEST(Json, WorkloadRoundTrip) {
    Workload w;
    w.toffoli_count = 5;
    w.t_count = 3;
    w.logical_qubits = 9;
    w.error_budget = 0.25;
    auto back = workload_from_json(to_json(w));
    EXPECT_EQ(back.toffoli_count, 5u);
    EXPECT_EQ(back.t_count, 3u);
    EXPECT_EQ(back.logical_qubits, 9u);
    EXPECT_EQ(back.error_budget, 0.25);
    auto f = workload_from_json(R"({"version": 1, "factoring_bits": 2048})");
    EXPECT_EQ(f.toffoli_count, factoring_workload(2048).toffoli_count);
}

TEST(Json, PipelineRoundTrips) {
    for (auto c : {PipelineConfig::ccz_default(), PipelineConfig::c2t_default()}) {
        c.seed = 12;
        EXPECT_EQ(pipeline_config_from_json(to_json(c)), c);
        c.horizon_d = 2000;
        auto s = simulate(c);
        EXPECT_EQ(pipeline_stats_from_json(to_json(s)), s);
    }
    auto preset = pipeline_config_from_json(R"({"version": 1, "preset": "c2t", "seed": 4})");
    auto expected = PipelineConfig::c2t_default();
    expected.seed = 4;
    EXPECT_EQ(preset, expected);
}

TEST(Json, RejectsBadDocuments) {
    EXPECT_THROW(pipeline_config_from_json("{"), JsonFormatError);
    EXPECT_THROW(pipeline_config_from_json(R"({"version": 2})"), JsonFormatError);
    EXPECT_THROW(pipeline_config_from_json(R"({"num_level1": 3})"), JsonFormatError);
    EXPECT_THROW(pipeline_config_from_json(R"({"version": 1, "num_level1": "many"})"), JsonFormatError);
    EXPECT_THROW(pipeline_config_from_json(R"({"version": 1, "preset": "fast"})"), JsonFormatError);
    EXPECT_THROW(workload_from_json(R"({"version": 1, "toffoli_count": -4})"), JsonFormatError);
    EXPECT_THROW(injection_report_from_json("[]"), JsonFormatError);
}
