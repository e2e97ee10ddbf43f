// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "magicfab/circuits.h"
#include "magicfab/error_analysis.h"
#include "magicfab/pipeline.h"
#include "magicfab/resource_model.h"

using namespace magicfab;

namespace {

// Tolerances, pinned.
constexpr double kFidelityTol = 1e-9;
constexpr int kPhaseAngles = 20;
constexpr double kDistilledT1 = 3.5e-8, kDistilledT1Tol = 0.10;
constexpr double kDistilledCcz = 3.4e-14, kDistilledCczTol = 0.10;
constexpr double kMinimalT1 = 1.4e-6, kMinimalT1Tol = 0.20;
constexpr double kMinimalCcz = 5.3e-11, kMinimalCczTol = 0.15;
constexpr double kStates = 1.9e10, kStatesTol = 0.10;
constexpr double kStatesD19Low = 1e11, kStatesD19High = 1e12;
constexpr double kRuntimeYearsLow = 4, kRuntimeYearsHigh = 6;
constexpr double kPeriodTol = 0.02;
constexpr double kPipelineHorizon = 1e5;
constexpr double kEffectivePeriod = 3.35, kEffectivePeriodTol = 0.01;
constexpr double kSigmas = 3;
constexpr uint64_t kCatalystTrials = 100000;
constexpr double kDiscardHorizon = 5e7;
constexpr double kRunsPerDiscard = 1e5, kDiscardFactor = 2;
constexpr double kT1Error = 1.4e-6;
constexpr double kSpeedupCcz = 26 / 5.5, kSpeedupC2T = 2.0, kSpeedupTol = 0.01;

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void expect(bool cond, const std::string &what) {
        if (!cond) {
            ok = false;
            notes << " [failed: " << what << "]";
        }
    }
};

bool within(double value, double target, double rel) {
    return std::abs(value / target - 1) <= rel;
}

int failures = 0;

void criterion(int number, const char *title, double limit_s, const std::function<void(Check &)> &body) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception &e) {
        c.ok = false;
        c.notes << " [exception: " << e.what() << "]";
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(elapsed < limit_s, "runtime limit");
    if (!c.ok) {
        failures++;
    }
    std::printf(
        "criterion %d %s  %s (%.2f s of %.0f s):%s\n", number, c.ok ? "PASS" : "FAIL", title, elapsed, limit_s,
        c.notes.str().c_str());
    std::fflush(stdout);
}

/// Worst accepted fidelity over every branch, or -1 when some branch rejects.
double worst_branch(const Circuit &c, size_t *branches, const std::function<double(const QuantumState &)> &extra = {}) {
    double worst = 1;
    for_each_branch(c, QuantumState(c.num_qubits), false, {}, [&](const RunOutcome &o, double) {
        ++*branches;
        if (!o.accepted) {
            worst = -1;
            return;
        }
        worst = std::min(worst, output_fidelity(c, o.state));
        if (extra) {
            worst = std::min(worst, extra(o.state));
        }
    });
    return worst;
}

void functional(Check &c) {
    size_t ccz_branches = 0;
    double ccz = worst_branch(build_ccz_factory(), &ccz_branches);
    c.expect(ccz >= 1 - kFidelityTol, "ccz8 fidelity");
    c.notes << " ccz8 min fidelity " << ccz << " over " << ccz_branches << " branches;";

    for (const auto &circuit : {build_c2t_simple(), build_c2t_simple(C2TVariant::Teleported), build_c2t_surgery()}) {
        size_t branches = 0;
        double f = worst_branch(circuit, &branches);
        c.expect(f >= 1 - kFidelityTol, circuit.name);
        c.notes << " " << circuit.name << " " << f << " (" << branches << ");";
    }

    std::mt19937_64 rng(20190101);
    std::uniform_real_distribution<double> angle(0, 90);
    double worst = 1;
    for (int k = 0; k < kPhaseAngles; k++) {
        double theta = 90 - angle(rng);  // (0, 90]
        auto circuit = build_phase_catalysis(theta);
        auto catalyst = phase_plus_state(theta);
        size_t branches = 0;
        double f = worst_branch(circuit, &branches, [&](const QuantumState &s) {
            auto q = extract_qubit(s, 2);
            return q ? fidelity(*q, catalyst) : 0.0;
        });
        worst = std::min(worst, f);
    }
    c.expect(worst >= 1 - kFidelityTol, "phase catalysis");
    c.notes << " phase catalysis worst " << worst << " over " << kPhaseAngles << " angles, catalyst preserved";
}

void suppression(Check &c) {
    auto ccz = build_ccz_factory();
    auto t15 = build_fifteen_to_one();
    for (const Circuit *circuit : {&ccz, &t15}) {
        auto frame = enumerate_errors(*circuit, 3, {.backend = Backend::PauliFrame});
        auto sv = enumerate_errors(*circuit, 3, {.backend = Backend::StateVector});
        size_t agree = 0;
        for (size_t k = 0; k < frame.patterns.size() && k < sv.patterns.size(); k++) {
            agree += frame.patterns[k].mask == sv.patterns[k].mask && frame.patterns[k].cls == sv.patterns[k].cls;
        }
        c.expect(agree == frame.patterns.size() && frame.patterns.size() == sv.patterns.size(), "path agreement");
        c.notes << " " << circuit->name << " paths agree on " << agree << "/" << sv.patterns.size() << ";";
        if (circuit == &ccz) {
            const auto &w1 = sv.per_weight.at(1);
            const auto &w2 = sv.per_weight.at(2);
            c.expect(w1.detected == 8 && w1.undetected_benign + w1.undetected_harmful == 0, "ccz8 weight 1");
            c.expect(w2.detected == 0 && w2.undetected_harmful == 28, "ccz8 weight 2");
            c.notes << " ccz8 w1 " << w1.detected << "/" << w1.undetected_benign + w1.undetected_harmful << " w2 "
                    << w2.detected << "/" << w2.undetected_harmful << ";";
        } else {
            uint64_t h = sv.per_weight.at(3).undetected_harmful;
            c.expect(h == 35, "t15 weight 3");
            c.notes << " t15 w3 harmful " << h;
        }
    }
}

void regression(Check &c) {
    PhysicalAssumptions a;
    auto dist = chain_errors(Regime::DistillationLimited, {}, a);
    auto mini = chain_errors(Regime::MinimalDistance, {}, a);
    auto d19 = chain_errors(Regime::MinimalDistance, {7, 19, 31}, a);
    c.expect(within(dist.eps_t1, kDistilledT1, kDistilledT1Tol), "distilled eps_T1");
    c.expect(within(dist.eps_output, kDistilledCcz, kDistilledCczTol), "distilled eps_CCZ");
    c.expect(within(mini.eps_t1, kMinimalT1, kMinimalT1Tol), "minimal eps_T1");
    c.expect(within(mini.eps_output, kMinimalCcz, kMinimalCczTol), "minimal eps_CCZ");
    double states = 1 / mini.eps_output;
    double states19 = 1 / d19.eps_output;
    c.expect(within(states, kStates, kStatesTol), "states before failure");
    c.expect(states19 >= kStatesD19Low && states19 <= kStatesD19High, "states at d1=19");
    char buf[256];
    std::snprintf(
        buf, sizeof(buf), " distilled %.3g/%.3g, minimal %.3g/%.3g, states %.3g, d1=19 states %.3g", dist.eps_t1,
        dist.eps_output, mini.eps_t1, mini.eps_output, states, states19);
    c.notes << buf;
}

void feasibility(Check &c) {
    PhysicalAssumptions a;
    auto e1024 = estimate(factoring_workload(1024), FactoryModel::ccz(), Regime::MinimalDistance, {}, a);
    auto e4096 = estimate(factoring_workload(4096), FactoryModel::ccz(), Regime::MinimalDistance, {7, 19, 31}, a);
    double years = e4096.runtime_seconds / kSecondsPerYear;
    c.expect(e1024.success_probability < 0.5, "n=1024 success < 0.5");
    c.expect(e4096.success_probability > 0.5, "n=4096 d1=19 success > 0.5");
    c.expect(years >= kRuntimeYearsLow && years <= kRuntimeYearsHigh, "n=4096 runtime 4-6 years");
    char buf[256];
    std::snprintf(
        buf, sizeof(buf), " n=1024 success %.4f; n=4096 d1=19 success %.4f, eps_out %.3g, runtime %.2f y",
        e1024.success_probability, e4096.success_probability, e4096.eps_output, years);
    c.notes << buf;
}

void throughput(Check &c) {
    auto ccz_cfg = PipelineConfig::ccz_default();
    auto c2t_cfg = PipelineConfig::c2t_default();
    ccz_cfg.horizon_d = c2t_cfg.horizon_d = kPipelineHorizon;
    auto ccz = simulate(ccz_cfg);
    auto c2t = simulate(c2t_cfg);
    double eff = level1_effective_period(3.25, 0.03);
    c.expect(within(ccz.mean_output_period_d, 5.5, kPeriodTol), "CCZ period");
    c.expect(within(c2t.mean_output_period_d, 6.5, kPeriodTol), "C2T period");
    c.expect(std::abs(eff - kEffectivePeriod) <= kEffectivePeriodTol, "effective level-1 period");
    char buf[256];
    std::snprintf(
        buf, sizeof(buf), " CCZ period %.4f d, C2T period %.4f d, level-1 effective period %.4f d",
        ccz.mean_output_period_d, c2t.mean_output_period_d, eff);
    c.notes << buf;
}

void correlated(Check &c) {
    const std::pair<double, uint64_t> cases[] = {{1e-3, 50}, {1e-4, 100}};
    uint64_t seed = 1;
    for (auto [eps, n] : cases) {
        auto s = catalyst_error_stats(n, eps, kCatalystTrials, seed++);
        double mean = 0;
        for (uint64_t k = 1; k <= n; k++) {
            mean += 1 - std::pow(1 - eps, static_cast<double>(k));
        }
        double p_any = 1 - std::pow(1 - eps, static_cast<double>(n));
        c.expect(std::abs(s.p_any_bad - p_any) <= kSigmas * s.p_any_stderr, "p_any");
        c.expect(std::abs(s.mean_bad_count - mean) <= kSigmas * s.mean_stderr, "mean bad count");
        char buf[200];
        std::snprintf(
            buf, sizeof(buf), " (eps %g, n %llu): p_any %.4g vs %.4g, mean %.4g vs %.4g;", eps,
            static_cast<unsigned long long>(n), s.p_any_bad, p_any, s.mean_bad_count, mean);
        c.notes << buf;
    }
    auto cfg = PipelineConfig::c2t_default();
    cfg.ccz_detect_prob = 1 - std::pow(1 - kT1Error, 8);
    cfg.ccz_error_prob = 28 * kT1Error * kT1Error;
    cfg.horizon_d = kDiscardHorizon;
    auto s = simulate(cfg);
    uint64_t runs = s.outputs_produced + s.discarded_runs;
    double per_discard = s.catalyst_discard_events ? static_cast<double>(runs) / s.catalyst_discard_events : INFINITY;
    c.expect(
        per_discard >= kRunsPerDiscard / kDiscardFactor && per_discard <= kRunsPerDiscard * kDiscardFactor,
        "catalyst discard frequency");
    char buf[160];
    std::snprintf(
        buf, sizeof(buf), " C2T pipeline: %llu catalyst discards in %llu runs (1 per %.3g)",
        static_cast<unsigned long long>(s.catalyst_discard_events), static_cast<unsigned long long>(runs), per_discard);
    c.notes << buf;
}

void t_cost(Check &c) {
    auto cost = count_t_cost(build_phase_catalysis(22.5));
    double per_output = cost.t_count / 2.0;
    double ccz = toffoli_speedup(FactoryModel::legacy_t(), FactoryModel::ccz());
    double c2t = toffoli_speedup(FactoryModel::legacy_t(), FactoryModel::catalyzed_t());
    c.expect(cost.t_count == 5 && cost.arbitrary_rotations == 0, "sqrt(T) cost 5");
    c.expect(per_output == 2.5, "2.5 per output");
    c.expect(within(ccz, kSpeedupCcz, kSpeedupTol), "CCZ speedup");
    c.expect(within(c2t, kSpeedupC2T, kSpeedupTol), "C2T speedup");
    char buf[160];
    std::snprintf(
        buf, sizeof(buf), " sqrt(T): %d T per run, %.1f per output; speedup CCZ %.3f, C2T %.3f", cost.t_count,
        per_output, ccz, c2t);
    c.notes << buf;
}

}  // namespace

int main() {
    criterion(1, "functional circuit verification", 10, functional);
    criterion(2, "suppression coefficients by exhaustive oracle", 600, suppression);
    criterion(3, "error chain regression", 1, regression);
    criterion(4, "workload feasibility", 1, feasibility);
    criterion(5, "throughput", 30, throughput);
    criterion(6, "correlated-error statistics", 60, correlated);
    criterion(7, "T-cost accounting", 1, t_cost);
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
