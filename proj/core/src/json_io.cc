#include "magicfab/json_io.h"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace magicfab {

using nlohmann::json;

namespace {

json parse_versioned(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw JsonFormatError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw JsonFormatError("expected a JSON object");
    }
    if (!j.contains("version")) {
        throw JsonFormatError("missing \"version\" field");
    }
    if (!j["version"].is_number_integer() || j["version"].get<int>() != kJsonSchemaVersion) {
        throw JsonFormatError("unsupported version " + j["version"].dump());
    }
    return j;
}

// Wraps field access so type errors surface as JsonFormatError.
template <typename F>
auto guarded(F &&f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw JsonFormatError(e.what());
    }
}

json finite_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

uint64_t count_field(const json &j, const char *key) {
    if (!j.contains(key)) {
        return 0;
    }
    const json &v = j.at(key);
    if (!v.is_number_unsigned()) {
        throw JsonFormatError(std::string("\"") + key + "\" must be a nonnegative integer");
    }
    return v.get<uint64_t>();
}

double number_or_inf(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

}  // namespace

std::string to_json(const InjectionReport &r, int indent) {
    json j;
    j["version"] = kJsonSchemaVersion;
    j["circuit"] = r.circuit;
    j["sites"] = r.sites;
    j["max_weight"] = r.max_weight;
    j["harm_tolerance"] = r.harm_tolerance;
    json weights = json::array();
    for (const auto &[w, c] : r.per_weight) {
        weights.push_back({{"weight", w},
                           {"detected", c.detected},
                           {"undetected_benign", c.undetected_benign},
                           {"undetected_harmful", c.undetected_harmful}});
    }
    j["per_weight"] = weights;
    if (r.leading_term.has_value()) {
        j["leading_term"] = {{"coefficient", r.leading_term->coefficient}, {"degree", r.leading_term->degree}};
    } else {
        j["leading_term"] = nullptr;
    }
    json patterns = json::array();
    for (const auto &p : r.patterns) {
        patterns.push_back({{"mask", p.mask},
                            {"class", error_class_name(p.cls)},
                            {"fidelity", p.fidelity},
                            {"branch_inconsistent", p.branch_inconsistent}});
    }
    j["patterns"] = patterns;
    return j.dump(indent);
}

InjectionReport injection_report_from_json(std::string_view text) {
    json j = parse_versioned(text);
    return guarded([&] {
        InjectionReport r;
        r.circuit = j.at("circuit").get<std::string>();
        r.sites = j.at("sites").get<std::vector<std::string>>();
        r.max_weight = j.at("max_weight").get<int>();
        r.harm_tolerance = j.at("harm_tolerance").get<double>();
        for (const auto &w : j.at("per_weight")) {
            r.per_weight[w.at("weight").get<int>()] = WeightCounts{
                w.at("detected").get<uint64_t>(), w.at("undetected_benign").get<uint64_t>(),
                w.at("undetected_harmful").get<uint64_t>()};
        }
        if (!j.at("leading_term").is_null()) {
            r.leading_term = LeadingTerm{
                j["leading_term"].at("coefficient").get<uint64_t>(), j["leading_term"].at("degree").get<int>()};
        }
        for (const auto &p : j.at("patterns")) {
            PatternResult pr;
            pr.mask = p.at("mask").get<uint64_t>();
            std::string cls = p.at("class").get<std::string>();
            bool known = false;
            for (auto c : {ErrorClass::Detected, ErrorClass::UndetectedBenign, ErrorClass::UndetectedHarmful}) {
                if (error_class_name(c) == cls) {
                    pr.cls = c;
                    known = true;
                }
            }
            if (!known) {
                throw JsonFormatError("unknown error class '" + cls + "'");
            }
            pr.fidelity = p.at("fidelity").get<double>();
            pr.branch_inconsistent = p.at("branch_inconsistent").get<bool>();
            r.patterns.push_back(pr);
        }
        return r;
    });
}

std::string to_json(const MonteCarloResult &m, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"trials", m.trials},
           {"rejection_rate", m.rejection_rate},
           {"rejection_stderr", m.rejection_stderr},
           {"harmful_accept_rate", m.harmful_accept_rate},
           {"harmful_stderr", m.harmful_stderr},
           {"output_error_rate", m.output_error_rate}};
    return j.dump(indent);
}

std::string to_json(const Workload &w, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"toffoli_count", w.toffoli_count},
           {"t_count", w.t_count},
           {"logical_qubits", w.logical_qubits},
           {"error_budget", w.error_budget}};
    return j.dump(indent);
}

Workload workload_from_json(std::string_view text) {
    json j = parse_versioned(text);
    Workload w = guarded([&] {
        if (j.contains("factoring_bits")) {
            Workload f = factoring_workload(count_field(j, "factoring_bits"));
            f.error_budget = j.value("error_budget", f.error_budget);
            return f;
        }
        Workload v;
        v.toffoli_count = count_field(j, "toffoli_count");
        v.t_count = count_field(j, "t_count");
        v.logical_qubits = count_field(j, "logical_qubits");
        v.error_budget = j.value("error_budget", v.error_budget);
        return v;
    });
    try {
        w.validate();
    } catch (const std::invalid_argument &e) {
        throw JsonFormatError(e.what());
    }
    return w;
}

std::string to_json(const ResourceEstimate &e, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"regime", regime_name(e.regime)},
           {"distances", {{"d0", e.distances.d0}, {"d1", e.distances.d1}, {"d2", e.distances.d2}}},
           {"factory", e.factory},
           {"eps_t0", e.eps_t0},
           {"eps_t1", e.eps_t1},
           {"eps_output", e.eps_output},
           {"states_before_failure", finite_or_null(e.states_before_failure)},
           {"runs", e.runs},
           {"total_physical_qubits", e.total_physical_qubits},
           {"runtime_seconds", e.runtime_seconds},
           {"runtime_years", e.runtime_seconds / kSecondsPerYear},
           {"success_probability", e.success_probability},
           {"feasible", e.feasible}};
    return j.dump(indent);
}

ResourceEstimate resource_estimate_from_json(std::string_view text) {
    json j = parse_versioned(text);
    return guarded([&] {
        ResourceEstimate e;
        e.regime = regime_from_name(j.at("regime").get<std::string>());
        const auto &d = j.at("distances");
        e.distances = {d.at("d0").get<int>(), d.at("d1").get<int>(), d.at("d2").get<int>()};
        e.factory = j.at("factory").get<std::string>();
        e.eps_t0 = j.at("eps_t0").get<double>();
        e.eps_t1 = j.at("eps_t1").get<double>();
        e.eps_output = j.at("eps_output").get<double>();
        e.states_before_failure = number_or_inf(j.at("states_before_failure"));
        e.runs = j.at("runs").get<uint64_t>();
        e.total_physical_qubits = j.at("total_physical_qubits").get<uint64_t>();
        e.runtime_seconds = j.at("runtime_seconds").get<double>();
        e.success_probability = j.at("success_probability").get<double>();
        e.feasible = j.at("feasible").get<bool>();
        return e;
    });
}

std::string to_json(const PipelineConfig &c, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"num_level1", c.num_level1},
           {"level1_period_d", c.level1_period_d},
           {"level1_discard_prob", c.level1_discard_prob},
           {"buffer_capacity", c.buffer_capacity},
           {"consumer",
            {{"kind", consumer_kind_name(c.consumer.kind)},
             {"period_d", c.consumer.period_d},
             {"inputs", c.consumer.inputs},
             {"outputs", c.consumer.outputs}}},
           {"ccz_detect_prob", c.ccz_detect_prob},
           {"ccz_error_prob", c.ccz_error_prob},
           {"bootstrap_delay_d", c.bootstrap_delay_d},
           {"routing_latency_d", c.routing_latency_d},
           {"horizon_d", c.horizon_d},
           {"seed", c.seed}};
    return j.dump(indent);
}

PipelineConfig pipeline_config_from_json(std::string_view text) {
    json j = parse_versioned(text);
    PipelineConfig c = guarded([&] {
        PipelineConfig base;
        if (j.contains("preset")) {
            std::string preset = j["preset"].get<std::string>();
            if (preset == "ccz") {
                base = PipelineConfig::ccz_default();
            } else if (preset == "c2t") {
                base = PipelineConfig::c2t_default();
            } else {
                throw JsonFormatError("unknown preset '" + preset + "'");
            }
        }
        PipelineConfig v = base;
        v.num_level1 = j.value("num_level1", base.num_level1);
        v.level1_period_d = j.value("level1_period_d", base.level1_period_d);
        v.level1_discard_prob = j.value("level1_discard_prob", base.level1_discard_prob);
        v.buffer_capacity = j.value("buffer_capacity", base.buffer_capacity);
        if (j.contains("consumer")) {
            const auto &k = j["consumer"];
            if (k.contains("kind")) {
                ConsumerKind kind = consumer_kind_from_name(k["kind"].get<std::string>());
                if (kind != base.consumer.kind) {
                    v.consumer = kind == ConsumerKind::CCZ ? ConsumerConfig::ccz() : ConsumerConfig::c2t();
                }
            }
            v.consumer.period_d = k.value("period_d", v.consumer.period_d);
            v.consumer.inputs = k.value("inputs", v.consumer.inputs);
            v.consumer.outputs = k.value("outputs", v.consumer.outputs);
        }
        v.ccz_detect_prob = j.value("ccz_detect_prob", base.ccz_detect_prob);
        v.ccz_error_prob = j.value("ccz_error_prob", base.ccz_error_prob);
        v.bootstrap_delay_d = j.value("bootstrap_delay_d", base.bootstrap_delay_d);
        v.routing_latency_d = j.value("routing_latency_d", base.routing_latency_d);
        v.horizon_d = j.value("horizon_d", base.horizon_d);
        v.seed = j.value("seed", base.seed);
        return v;
    });
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw JsonFormatError(e.what());
    }
    return c;
}

std::string to_json(const PipelineStats &s, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"outputs_produced", s.outputs_produced},
           {"output_states", s.output_states},
           {"discarded_runs", s.discarded_runs},
           {"mean_output_period_d", s.mean_output_period_d},
           {"consumer_stall_fraction", s.consumer_stall_fraction},
           {"buffer_occupancy_histogram", s.buffer_occupancy_histogram},
           {"catalyst_discard_events", s.catalyst_discard_events},
           {"bootstrap_time_d", s.bootstrap_time_d},
           {"bad_outputs", s.bad_outputs},
           {"first_bad_output_index",
            s.first_bad_output_index.has_value() ? json(*s.first_bad_output_index) : json(nullptr)},
           {"level1_attempts", s.level1_attempts},
           {"level1_discards", s.level1_discards},
           {"level1_states", s.level1_states},
           {"consumed_states", s.consumed_states},
           {"leftover_states", s.leftover_states},
           {"producer_blocked_time_d", s.producer_blocked_time_d}};
    return j.dump(indent);
}

PipelineStats pipeline_stats_from_json(std::string_view text) {
    json j = parse_versioned(text);
    return guarded([&] {
        PipelineStats s;
        s.outputs_produced = j.at("outputs_produced").get<uint64_t>();
        s.output_states = j.at("output_states").get<uint64_t>();
        s.discarded_runs = j.at("discarded_runs").get<uint64_t>();
        s.mean_output_period_d = j.at("mean_output_period_d").get<double>();
        s.consumer_stall_fraction = j.at("consumer_stall_fraction").get<double>();
        s.buffer_occupancy_histogram = j.at("buffer_occupancy_histogram").get<std::vector<double>>();
        s.catalyst_discard_events = j.at("catalyst_discard_events").get<uint64_t>();
        s.bootstrap_time_d = j.at("bootstrap_time_d").get<double>();
        s.bad_outputs = j.at("bad_outputs").get<uint64_t>();
        if (!j.at("first_bad_output_index").is_null()) {
            s.first_bad_output_index = j["first_bad_output_index"].get<uint64_t>();
        }
        s.level1_attempts = j.at("level1_attempts").get<uint64_t>();
        s.level1_discards = j.at("level1_discards").get<uint64_t>();
        s.level1_states = j.at("level1_states").get<uint64_t>();
        s.consumed_states = j.at("consumed_states").get<uint64_t>();
        s.leftover_states = j.at("leftover_states").get<uint64_t>();
        s.producer_blocked_time_d = j.at("producer_blocked_time_d").get<double>();
        return s;
    });
}

std::string to_json(const CatalystErrorStats &s, int indent) {
    json j{{"version", kJsonSchemaVersion},
           {"trials", s.trials},
           {"p_any_bad", s.p_any_bad},
           {"p_any_stderr", s.p_any_stderr},
           {"mean_bad_count", s.mean_bad_count},
           {"mean_stderr", s.mean_stderr},
           {"p_any_closed_form", s.p_any_closed_form},
           {"mean_closed_form", s.mean_closed_form}};
    return j.dump(indent);
}

}  // namespace magicfab
