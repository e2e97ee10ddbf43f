#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "magicfab/circuit_io.h"
#include "magicfab/circuits.h"
#include "magicfab/error_analysis.h"
#include "magicfab/json_io.h"
#include "magicfab/pipeline.h"
#include "magicfab/resource_model.h"

namespace magicfab::cli {

namespace {

using nlohmann::json;

constexpr double kFidelityTolerance = 1e-9;
// Circuits up to this size are verified on every measurement branch.
constexpr size_t kExhaustiveBranchQubits = 12;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Circuit load_circuit(const std::string &name, double theta) {
    try {
        return circuit_by_name(name, theta);
    } catch (const std::invalid_argument &e) {
        std::string names;
        for (const auto &n : circuit_names()) {
            names += " " + n;
        }
        throw UsageError(std::string(e.what()) + " (known:" + names + ")");
    }
}

struct Options {
    bool json = false;
    uint64_t seed = 0;
    double theta = 22.5;
    std::string circuit;
    int max_weight = -1;
    std::string backend = "auto";
    std::string file;
    std::string regime = "minimal";
    std::string factory = "ccz";
    int d0 = 7;
    int d1 = 15;
    int d2 = 31;
    uint64_t factoring_bits = 0;
    std::optional<double> horizon;
    std::optional<uint64_t> seed_override;
    std::string trace;
    double eps = 1e-3;
    uint64_t trials = 100000;
    uint64_t runs = 100;
};

CommandResult cmd_verify(const Options &o) {
    Circuit c = load_circuit(o.circuit, o.theta);
    double min_fid = 1;
    double accepted_prob = 0;
    uint64_t branches = 0;
    bool all_accepted = true;
    std::string mode;
    if (c.num_qubits <= kExhaustiveBranchQubits) {
        mode = "all-branches";
        for_each_branch(c, QuantumState(c.num_qubits), false, {}, [&](const RunOutcome &out, double p) {
            branches++;
            if (out.accepted) {
                accepted_prob += p;
                min_fid = std::min(min_fid, output_fidelity(c, out.state));
            } else {
                all_accepted = false;
            }
        });
    } else {
        mode = "sampled-branches";
        RunOptions ro;
        ro.seed = o.seed;
        for (auto m : {BranchMode::PreferZero, BranchMode::PreferOne, BranchMode::Random}) {
            ro.branch_mode = m;
            RunOutcome out = run_circuit(c, ro);
            branches++;
            if (out.accepted) {
                min_fid = std::min(min_fid, output_fidelity(c, out.state));
            } else {
                all_accepted = false;
            }
        }
        accepted_prob = all_accepted ? 1.0 : 0.0;
    }
    bool pass = all_accepted && min_fid >= 1 - kFidelityTolerance;
    TCost cost = count_t_cost(c);

    CommandResult r;
    r.exit_code = pass ? kSuccess : kVerificationFailure;
    if (o.json) {
        json j{{"version", kJsonSchemaVersion},
               {"circuit", c.name},
               {"mode", mode},
               {"branches", branches},
               {"accepted", all_accepted},
               {"min_fidelity", min_fid},
               {"outputs", c.outputs.size()},
               {"t_count", cost.t_count},
               {"arbitrary_rotations", cost.arbitrary_rotations},
               {"pass", pass}};
        if (c.name == "phase") {
            j["theta_deg"] = o.theta;
        }
        r.out = j.dump(2) + "\n";
    } else {
        std::ostringstream s;
        s << "circuit        " << c.name << "\n";
        if (c.name == "phase") {
            s << "theta_deg      " << o.theta << "\n";
        }
        s << "branches       " << branches << " (" << mode << ")\n";
        s << "accepted       " << (all_accepted ? "yes" : "no") << "\n";
        char line[64];
        std::snprintf(line, sizeof(line), "min fidelity   %.12f\n", min_fid);
        s << line;
        s << "t_count        " << cost.t_count << " for " << c.outputs.size() << " outputs\n";
        s << (pass ? "PASS" : "FAIL") << "\n";
        r.out = s.str();
    }
    return r;
}

CommandResult cmd_inject(const Options &o) {
    Circuit c = load_circuit(o.circuit, o.theta);
    int sites = static_cast<int>(c.injection_sites().size());
    int w = o.max_weight < 0 ? std::min(3, sites) : o.max_weight;
    EnumerateOptions eo;
    try {
        eo.backend = backend_from_name(o.backend);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (w > sites) {
        throw UsageError("--max-weight exceeds the " + std::to_string(sites) + " injection sites of " + c.name);
    }
    InjectionReport report = enumerate_errors(c, w, eo);
    CommandResult r;
    if (o.json) {
        r.out = to_json(report) + "\n";
    } else {
        r.out = report_table(report);
    }
    return r;
}

CommandResult cmd_montecarlo(const Options &o) {
    Circuit c = load_circuit(o.circuit, o.theta);
    if (!(o.eps >= 0 && o.eps <= 0.1)) {
        throw UsageError("--eps must lie in [0, 0.1]");
    }
    PatternClassifier classifier(c);
    MonteCarloResult m = monte_carlo_validate(classifier, o.eps, o.trials, o.seed);
    int sites = static_cast<int>(c.injection_sites().size());
    int w = o.max_weight < 0 ? std::min(3, sites) : std::min(o.max_weight, sites);
    RatePrediction p = predict_rates(enumerate_errors(c, w), o.eps);
    CommandResult r;
    if (o.json) {
        json j = json::parse(to_json(m));
        j["circuit"] = c.name;
        j["eps"] = o.eps;
        j["predicted_rejection"] = p.rejection;
        j["predicted_harmful_accept"] = p.harmful_accept;
        j["prediction_max_weight"] = w;
        r.out = j.dump(2) + "\n";
    } else {
        char buf[512];
        std::snprintf(
            buf, sizeof(buf),
            "circuit %s, eps %g, %llu trials\n"
            "rejection rate       %.6g +- %.2g (predicted %.6g)\n"
            "harmful accept rate  %.6g +- %.2g (predicted %.6g up to weight %d)\n"
            "output error rate    %.6g\n",
            c.name.c_str(), o.eps, static_cast<unsigned long long>(m.trials), m.rejection_rate, m.rejection_stderr,
            p.rejection, m.harmful_accept_rate, m.harmful_stderr, p.harmful_accept, w, m.output_error_rate);
        r.out = buf;
    }
    return r;
}

FactoryModel factory_by_name(const std::string &name) {
    if (name == "ccz") {
        return FactoryModel::ccz();
    }
    if (name == "c2t") {
        return FactoryModel::catalyzed_t();
    }
    if (name == "legacy-t") {
        return FactoryModel::legacy_t();
    }
    throw UsageError("unknown factory '" + name + "' (known: ccz c2t legacy-t)");
}

CommandResult cmd_estimate(const Options &o) {
    Workload w;
    if (o.factoring_bits > 0) {
        w = factoring_workload(o.factoring_bits);
    } else if (!o.file.empty()) {
        w = workload_from_json(read_file(o.file));
    } else {
        throw UsageError("estimate needs a workload file or --factoring");
    }
    Regime regime;
    try {
        regime = regime_from_name(o.regime);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    DistanceAssignment d{o.d0, o.d1, o.d2};
    try {
        d.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    ResourceEstimate e = estimate(w, factory_by_name(o.factory), regime, d, PhysicalAssumptions{});
    CommandResult r;
    r.out = o.json ? to_json(e) + "\n" : estimate_table(e);
    return r;
}

CommandResult cmd_pipeline(const Options &o) {
    PipelineConfig cfg = pipeline_config_from_json(read_file(o.file));
    if (o.seed_override.has_value()) {
        cfg.seed = *o.seed_override;
    }
    if (o.horizon.has_value()) {
        cfg.horizon_d = *o.horizon;
    }
    PipelineStats s;
    if (!o.trace.empty()) {
        std::ofstream trace(o.trace);
        if (!trace) {
            throw UsageError("cannot write " + o.trace);
        }
        s = simulate(cfg, &trace);
    } else {
        s = simulate(cfg);
    }
    CommandResult r;
    r.out = o.json ? to_json(s) + "\n" : stats_table(s);
    return r;
}

CommandResult cmd_catalyst(const Options &o) {
    if (!(o.eps >= 0 && o.eps < 1)) {
        throw UsageError("--eps must lie in [0, 1)");
    }
    CatalystErrorStats s = catalyst_error_stats(o.runs, o.eps, o.trials, o.seed);
    CommandResult r;
    if (o.json) {
        r.out = to_json(s) + "\n";
    } else {
        char buf[384];
        std::snprintf(
            buf, sizeof(buf),
            "runs %llu, eps %g, %llu trials\n"
            "P(any bad output)  %.6g +- %.2g (closed form %.6g)\n"
            "mean bad outputs   %.6g +- %.2g (closed form %.6g)\n",
            static_cast<unsigned long long>(o.runs), o.eps, static_cast<unsigned long long>(s.trials), s.p_any_bad,
            s.p_any_stderr, s.p_any_closed_form, s.mean_bad_count, s.mean_stderr, s.mean_closed_form);
        r.out = buf;
    }
    return r;
}

CommandResult cmd_circuit(const Options &o) {
    CommandResult r;
    r.out = circuit_to_text(load_circuit(o.circuit, o.theta));
    return r;
}

}  // namespace

CommandResult run(const std::vector<std::string> &args) {
    CLI::App app{"Magic-state factory verification and resource estimation", "magicfab"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub) {
        sub->add_flag("--json", o.json, "Machine-readable JSON output");
        sub->add_option("--seed", o.seed, "Random seed");
    };
    auto add_circuit = [&](CLI::App *sub) {
        sub->add_option("circuit", o.circuit, "ccz8, t15, c2t-simple, c2t-teleported, c2t-surgery or phase")
            ->required();
        sub->add_option("--theta", o.theta, "Phase catalysis angle in degrees")->check(CLI::Range(0.0, 90.0));
    };

    auto *verify = app.add_subcommand("verify", "Error-free simulation against the reference state");
    add_circuit(verify);
    add_common(verify);

    auto *inject = app.add_subcommand("inject", "Exhaustive Z-error injection over the T sites");
    add_circuit(inject);
    add_common(inject);
    inject->add_option("--max-weight", o.max_weight, "Largest error weight to enumerate (default 3)")
        ->check(CLI::NonNegativeNumber);
    inject->add_option("--backend", o.backend, "auto, state-vector or pauli-frame");

    auto *mc = app.add_subcommand("montecarlo", "Sampled per-site Z errors");
    add_circuit(mc);
    add_common(mc);
    mc->add_option("--eps", o.eps, "Per-site error probability");
    mc->add_option("--trials", o.trials, "Number of samples")->check(CLI::PositiveNumber);
    mc->add_option("--max-weight", o.max_weight, "Truncation weight of the analytic prediction");

    auto *est = app.add_subcommand("estimate", "Resource estimate for a workload");
    est->add_option("workload", o.file, "Workload JSON file");
    est->add_option("--factoring", o.factoring_bits, "Use the n-bit factoring workload instead of a file");
    est->add_option("--regime", o.regime, "distillation or minimal");
    est->add_option("--factory", o.factory, "ccz, c2t or legacy-t");
    est->add_option("--d0", o.d0, "Level-0 code distance");
    est->add_option("--d1", o.d1, "Level-1 code distance");
    est->add_option("--d2", o.d2, "Level-2 code distance");
    est->add_flag("--json", o.json, "Machine-readable JSON output");

    auto *pipe = app.add_subcommand("pipeline", "Discrete-event simulation of a factory complex");
    pipe->add_option("config", o.file, "Pipeline config JSON file")->required();
    pipe->add_option("--seed", o.seed_override, "Override the config's seed");
    pipe->add_option("--horizon", o.horizon, "Override the horizon (units of d cycles)")->check(CLI::NonNegativeNumber);
    pipe->add_option("--trace", o.trace, "Write a per-event CSV trace");
    pipe->add_flag("--json", o.json, "Machine-readable JSON output");

    auto *cat = app.add_subcommand("catalyst", "Correlated output errors from catalyst poisoning");
    cat->add_option("--runs", o.runs, "Runs per trial")->check(CLI::PositiveNumber);
    cat->add_option("--eps", o.eps, "Per-run error probability");
    cat->add_option("--trials", o.trials, "Number of trials")->check(CLI::PositiveNumber);
    add_common(cat);

    auto *dump = app.add_subcommand("circuit", "Print a circuit in text form");
    add_circuit(dump);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    CommandResult result;
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream out;
        std::ostringstream err;
        int code = app.exit(e, out, err);
        result.out = out.str();
        result.err = err.str();
        result.exit_code = code == 0 ? kSuccess : kUsageError;
        return result;
    }

    try {
        if (*verify) {
            return cmd_verify(o);
        }
        if (*inject) {
            return cmd_inject(o);
        }
        if (*mc) {
            return cmd_montecarlo(o);
        }
        if (*est) {
            return cmd_estimate(o);
        }
        if (*pipe) {
            return cmd_pipeline(o);
        }
        if (*cat) {
            return cmd_catalyst(o);
        }
        return cmd_circuit(o);
    } catch (const UsageError &e) {
        result.exit_code = kUsageError;
        result.err = std::string("error: ") + e.what() + "\n";
    } catch (const JsonFormatError &e) {
        result.exit_code = kUsageError;
        result.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::invalid_argument &e) {
        result.exit_code = kUsageError;
        result.err = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception &e) {
        result.exit_code = kVerificationFailure;
        result.err = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace magicfab::cli
