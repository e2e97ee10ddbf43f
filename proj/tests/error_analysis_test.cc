#include "magicfab/error_analysis.h"

#include <gtest/gtest.h>

#include <cmath>

#include "magicfab/circuits.h"

using namespace magicfab;

namespace {

uint64_t binomial(int n, int k) {
    uint64_t r = 1;
    for (int i = 1; i <= k; i++) {
        r = r * (n - k + i) / i;
    }
    return r;
}

Circuit relabeled(Circuit c, const std::map<std::string, std::string> &names) {
    for (auto &op : c.ops) {
        if (auto *inj = std::get_if<InjectOp>(&op)) {
            inj->label = names.at(inj->label);
        }
    }
    return c;
}

}  // namespace

TEST(ErrorAnalysis, CczFactoryLowWeights) {
    auto report = enumerate_errors(build_ccz_factory(), 3, {.backend = Backend::PauliFrame});
    EXPECT_EQ(report.per_weight.at(0), (WeightCounts{0, 1, 0}));
    EXPECT_EQ(report.per_weight.at(1), (WeightCounts{8, 0, 0}));
    EXPECT_EQ(report.per_weight.at(2), (WeightCounts{0, 0, 28}));
    EXPECT_EQ(report.per_weight.at(3), (WeightCounts{56, 0, 0}));
    ASSERT_TRUE(report.leading_term.has_value());
    EXPECT_EQ(*report.leading_term, (LeadingTerm{28, 2}));
    EXPECT_EQ(derive_suppression(report), (SuppressionModel{28, 2}));
    EXPECT_TRUE(report.branch_inconsistent().empty());
}

TEST(ErrorAnalysis, CountsSumToBinomials) {
    for (const auto &c : {build_ccz_factory(), build_fifteen_to_one()}) {
        auto report = enumerate_errors(c, 3, {.backend = Backend::PauliFrame});
        int n = static_cast<int>(report.num_sites());
        for (const auto &[w, counts] : report.per_weight) {
            EXPECT_EQ(counts.total(), binomial(n, w)) << c.name << " weight " << w;
        }
        EXPECT_EQ(report.patterns.size(), 1 + binomial(n, 1) + binomial(n, 2) + binomial(n, 3));
    }
}

TEST(ErrorAnalysis, FifteenToOneLeadingTerm) {
    auto report = enumerate_errors(build_fifteen_to_one(), 3, {.backend = Backend::PauliFrame});
    EXPECT_EQ(report.per_weight.at(1), (WeightCounts{15, 0, 0}));
    EXPECT_EQ(report.per_weight.at(2), (WeightCounts{105, 0, 0}));
    EXPECT_EQ(report.per_weight.at(3).undetected_harmful, 35u);
    EXPECT_EQ(derive_suppression(report), (SuppressionModel{35, 3}));
}

TEST(ErrorAnalysis, BackendsAgreeOnCczFactory) {
    auto c = build_ccz_factory();
    auto frame = enumerate_errors(c, 2, {.backend = Backend::PauliFrame});
    auto sv = enumerate_errors(c, 2, {.backend = Backend::StateVector});
    EXPECT_EQ(frame.per_weight, sv.per_weight);
    ASSERT_EQ(frame.patterns.size(), sv.patterns.size());
    for (size_t k = 0; k < frame.patterns.size(); k++) {
        EXPECT_EQ(frame.patterns[k].mask, sv.patterns[k].mask);
        EXPECT_EQ(frame.patterns[k].cls, sv.patterns[k].cls);
    }
}

TEST(ErrorAnalysis, BackendsAgreeOnFifteenToOneSingles) {
    PatternClassifier classifier(build_fifteen_to_one());
    for (uint64_t mask : {uint64_t{0}, uint64_t{1}, uint64_t{1} << 14, uint64_t{0b111}}) {
        EXPECT_EQ(classifier.classify_state_vector(mask).cls, classifier.classify_pauli_frame(mask).cls) << mask;
    }
}

TEST(ErrorAnalysis, ClassificationIsIdempotent) {
    auto c = build_ccz_factory();
    EXPECT_EQ(enumerate_errors(c, 2, {.threads = 1}), enumerate_errors(c, 2, {.threads = 4}));
    PatternClassifier classifier(c);
    EXPECT_EQ(classifier.classify(0b11), classifier.classify(0b11));
}

TEST(ErrorAnalysis, RelabelingKeepsCounts) {
    auto c = build_ccz_factory();
    std::map<std::string, std::string> names;
    auto sites = c.injection_sites();
    for (size_t k = 0; k < sites.size(); k++) {
        names[sites[k]] = "site" + std::to_string(sites.size() - k);
    }
    auto a = enumerate_errors(c, 3);
    auto b = enumerate_errors(relabeled(c, names), 3);
    EXPECT_EQ(a.per_weight, b.per_weight);
    for (size_t k = 0; k < a.patterns.size(); k++) {
        EXPECT_EQ(a.patterns[k].cls, b.patterns[k].cls);
    }
    EXPECT_EQ(b.labels(0b101), (std::vector<std::string>{"site8", "site6"}));
}

TEST(ErrorAnalysis, CatalyzedCircuitsHaveFirstOrderHarm) {
    for (const auto &c : {build_c2t_simple(), build_c2t_simple(C2TVariant::Teleported), build_phase_catalysis(22.5)}) {
        auto report = enumerate_errors(c, 1);
        EXPECT_EQ(derive_suppression(report), (SuppressionModel{1, 1})) << c.name;
    }
}

TEST(ErrorAnalysis, NoHarmfulClassThrows) {
    auto report = enumerate_errors(build_ccz_factory(), 1);
    EXPECT_FALSE(report.leading_term.has_value());
    EXPECT_THROW(derive_suppression(report), std::domain_error);
}

TEST(ErrorAnalysis, SyntheticFirstOrderReport) {
    InjectionReport r;
    r.sites = {"x", "y", "z"};
    r.max_weight = 1;
    r.per_weight[0] = {0, 1, 0};
    r.per_weight[1] = {0, 0, 3};
    EXPECT_EQ(derive_suppression(r), (SuppressionModel{3, 1}));
    EXPECT_DOUBLE_EQ(SuppressionModel({3, 1}).evaluate(0.01), 0.03);
}

TEST(ErrorAnalysis, BadInputsThrow) {
    EXPECT_THROW(enumerate_errors(build_ccz_factory(), 9), std::invalid_argument);
    EXPECT_THROW(enumerate_errors(build_ccz_factory(), -1), std::invalid_argument);
    Circuit bare;
    bare.name = "bare";
    bare.num_qubits = 1;
    EXPECT_THROW(enumerate_errors(bare, 0), std::invalid_argument);
    EXPECT_THROW(monte_carlo_validate(build_ccz_factory(), 0.2, 10, 1), std::invalid_argument);
    EXPECT_THROW(monte_carlo_validate(build_ccz_factory(), -0.1, 10, 1), std::invalid_argument);
    EXPECT_THROW(monte_carlo_validate(build_ccz_factory(), 0.01, 0, 1), std::invalid_argument);
    EXPECT_THROW(backend_from_name("gpu"), std::invalid_argument);
}

TEST(ErrorAnalysis, SuppressionAtLevelOneError) {
    auto model = derive_suppression(enumerate_errors(build_ccz_factory(), 2));
    double out = model.evaluate(3.5e-8);
    EXPECT_NEAR(out / 3.43e-14, 1, 0.01);
}

TEST(ErrorAnalysis, ZeroErrorRateMonteCarlo) {
    auto mc = monte_carlo_validate(build_ccz_factory(), 0, 1000, 5);
    EXPECT_EQ(mc.trials, 1000u);
    EXPECT_EQ(mc.rejection_rate, 0);
    EXPECT_EQ(mc.harmful_accept_rate, 0);
    EXPECT_EQ(mc.output_error_rate, 0);
}

TEST(ErrorAnalysis, MonteCarloMatchesExactPrediction) {
    // Full enumeration makes the prediction exact; the sample must land within 3 standard errors.
    auto c = build_ccz_factory();
    auto report = enumerate_errors(c, 8);
    const double eps = 0.05;
    auto predicted = predict_rates(report, eps);
    EXPECT_NEAR(predicted.rejection + predicted.accept, 1, 1e-12);
    auto mc = monte_carlo_validate(c, eps, 40000, 17);
    EXPECT_NEAR(mc.rejection_rate, predicted.rejection, 3 * mc.rejection_stderr);
    EXPECT_NEAR(mc.harmful_accept_rate, predicted.harmful_accept, 3 * mc.harmful_stderr);
}

TEST(ErrorAnalysis, FifteenToOneRejectionNearThreePercent) {
    auto c = build_fifteen_to_one();
    const double eps = 2e-3;
    auto mc = monte_carlo_validate(c, eps, 50000, 3);
    double analytic = 1 - std::pow(1 - eps, 15);
    EXPECT_NEAR(mc.rejection_rate, analytic, 3 * mc.rejection_stderr);
    EXPECT_NEAR(analytic, 0.03, 0.001);
}

TEST(ErrorAnalysis, MonteCarloIsSeeded) {
    auto c = build_ccz_factory();
    auto a = monte_carlo_validate(c, 0.05, 2000, 9);
    auto b = monte_carlo_validate(c, 0.05, 2000, 9);
    EXPECT_EQ(a.rejection_rate, b.rejection_rate);
    EXPECT_EQ(a.harmful_accept_rate, b.harmful_accept_rate);
}

TEST(ErrorAnalysis, ReportTableMentionsLeadingTerm) {
    auto table = report_table(enumerate_errors(build_ccz_factory(), 2));
    EXPECT_NE(table.find("28"), std::string::npos);
    EXPECT_NE(table.find("harmful"), std::string::npos);
}
