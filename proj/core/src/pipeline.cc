#include "magicfab/pipeline.h"

#include <cmath>
#include <cstdio>
#include <deque>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>

namespace magicfab {

namespace {

// Level-1 output error the shipped complexes assume (minimal-distance regime).
constexpr double kDefaultT1Error = 1.4e-6;
constexpr double kTimeEps = 1e-9;

enum class EventType : uint8_t {
    // Lower values are processed first among events at the same time, so states that arrive at
    // the instant the consumer becomes ready are usable by it.
    ProducerDone,
    Arrival,
    RunComplete,
    ConsumerReady,
};

struct Event {
    double time;
    EventType type;
    uint64_t seq;
    int producer;

    bool operator>(const Event &o) const {
        if (time != o.time) {
            return time > o.time;
        }
        if (type != o.type) {
            return type > o.type;
        }
        return seq > o.seq;
    }
};

const char *event_name(EventType t) {
    switch (t) {
        case EventType::ProducerDone:
            return "producer_done";
        case EventType::Arrival:
            return "arrival";
        case EventType::RunComplete:
            return "run_complete";
        case EventType::ConsumerReady:
            return "consumer_ready";
    }
    return "?";
}

class PipelineSimulation {
   public:
    PipelineSimulation(const PipelineConfig &config, std::ostream *trace)
        : cfg_(config), trace_(trace), rng_(config.seed), capacity_(config.pool_capacity()) {
        stats_.buffer_occupancy_histogram.assign(capacity_ + 1, 0.0);
    }

    PipelineStats run() {
        if (trace_) {
            *trace_ << "time_d,event,producer,reserved,available\n";
        }
        for (int i = 0; i < cfg_.num_level1; i++) {
            // Staggered starts spread the producers evenly over one period.
            start_attempt(i, cfg_.level1_period_d * i / cfg_.num_level1);
        }
        push(0, EventType::ConsumerReady, -1);

        while (!events_.empty() && events_.top().time <= cfg_.horizon_d + kTimeEps) {
            Event e = events_.top();
            events_.pop();
            advance_clock(e.time);
            handle(e);
            try_start_consumer();
            if (trace_) {
                *trace_ << e.time << ',' << event_name(e.type) << ',' << e.producer << ',' << reserved_ << ','
                        << available_ << '\n';
            }
        }
        advance_clock(std::max(now_, cfg_.horizon_d));
        finish();
        return stats_;
    }

   private:
    void push(double time, EventType type, int producer) {
        events_.push(Event{time, type, seq_++, producer});
    }

    void advance_clock(double t) {
        if (t > now_) {
            stats_.buffer_occupancy_histogram[reserved_] += t - now_;
            stats_.producer_blocked_time_d += (t - now_) * blocked_.size();
            now_ = t;
        }
    }

    void start_attempt(int producer, double start) {
        push(start + cfg_.level1_period_d, EventType::ProducerDone, producer);
    }

    void deposit(int producer) {
        reserved_++;
        if (cfg_.routing_latency_d > 0) {
            push(now_ + cfg_.routing_latency_d, EventType::Arrival, producer);
        } else {
            available_++;
        }
    }

    void handle(const Event &e) {
        switch (e.type) {
            case EventType::ProducerDone: {
                stats_.level1_attempts++;
                std::bernoulli_distribution discard(cfg_.level1_discard_prob);
                if (discard(rng_)) {
                    stats_.level1_discards++;
                    start_attempt(e.producer, now_);
                    return;
                }
                stats_.level1_states++;
                if (reserved_ < capacity_) {
                    deposit(e.producer);
                    start_attempt(e.producer, now_);
                } else {
                    blocked_.push_back(e.producer);
                }
                return;
            }
            case EventType::Arrival:
                available_++;
                return;
            case EventType::RunComplete:
                complete_run();
                return;
            case EventType::ConsumerReady:
                return;
        }
    }

    void try_start_consumer() {
        if (running_ || now_ + kTimeEps < ready_time_ || available_ < cfg_.consumer.inputs) {
            return;
        }
        if (started_runs_ > 0) {
            stall_time_ += now_ - ready_time_;
        } else {
            first_start_ = now_;
        }
        last_start_ = now_;
        started_runs_++;
        available_ -= cfg_.consumer.inputs;
        reserved_ -= cfg_.consumer.inputs;
        stats_.consumed_states += cfg_.consumer.inputs;
        running_ = true;
        push(now_ + cfg_.consumer.period_d, EventType::RunComplete, -1);
        // Freed space unblocks waiting producers in arrival order.
        while (!blocked_.empty() && reserved_ < capacity_) {
            int p = blocked_.front();
            blocked_.pop_front();
            deposit(p);
            start_attempt(p, now_);
        }
    }

    void complete_run() {
        running_ = false;
        ready_time_ = now_;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double r = u(rng_);
        bool c2t = cfg_.consumer.kind == ConsumerKind::C2T;
        if (r < cfg_.ccz_detect_prob) {
            stats_.discarded_runs++;
            if (c2t) {
                stats_.catalyst_discard_events++;
                stats_.bootstrap_time_d += cfg_.bootstrap_delay_d;
                ready_time_ = now_ + cfg_.bootstrap_delay_d;
                poisoned_ = false;
            }
        } else {
            bool error = r < cfg_.ccz_detect_prob + cfg_.ccz_error_prob;
            bool bad = error || (c2t && poisoned_);
            if (c2t && error) {
                poisoned_ = true;
            }
            if (bad) {
                if (!stats_.first_bad_output_index.has_value()) {
                    stats_.first_bad_output_index = stats_.outputs_produced;
                }
                stats_.bad_outputs++;
            }
            if (stats_.outputs_produced == 0) {
                first_output_ = now_;
            }
            last_output_ = now_;
            stats_.outputs_produced++;
            stats_.output_states += cfg_.consumer.outputs;
        }
        push(ready_time_, EventType::ConsumerReady, -1);
    }

    void finish() {
        double total = 0;
        for (double v : stats_.buffer_occupancy_histogram) {
            total += v;
        }
        if (total > 0) {
            for (double &v : stats_.buffer_occupancy_histogram) {
                v /= total;
            }
        }
        if (stats_.outputs_produced >= 2) {
            stats_.mean_output_period_d = (last_output_ - first_output_) / (stats_.outputs_produced - 1);
        }
        double span = last_start_ - first_start_;
        stats_.consumer_stall_fraction = span > 0 ? stall_time_ / span : 0.0;
        stats_.leftover_states = reserved_ + blocked_.size();
    }

    const PipelineConfig &cfg_;
    std::ostream *trace_;
    std::mt19937_64 rng_;
    int capacity_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    uint64_t seq_ = 0;
    double now_ = 0;

    int reserved_ = 0;   // pool slots taken, including states still in transit
    int available_ = 0;  // states the consumer can use now
    std::deque<int> blocked_;

    bool running_ = false;
    bool poisoned_ = false;
    double ready_time_ = 0;
    uint64_t started_runs_ = 0;
    double first_start_ = 0;
    double last_start_ = 0;
    double stall_time_ = 0;
    double first_output_ = 0;
    double last_output_ = 0;
    PipelineStats stats_;
};

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p < 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1)");
    }
}

}  // namespace

std::string_view consumer_kind_name(ConsumerKind k) {
    return k == ConsumerKind::CCZ ? "ccz" : "c2t";
}

ConsumerKind consumer_kind_from_name(std::string_view name) {
    if (name == "ccz") {
        return ConsumerKind::CCZ;
    }
    if (name == "c2t") {
        return ConsumerKind::C2T;
    }
    throw std::invalid_argument("unknown consumer kind '" + std::string(name) + "'");
}

void PipelineConfig::validate() const {
    if (num_level1 < 1) {
        throw std::invalid_argument("need at least one level-1 factory");
    }
    if (!(level1_period_d > 0) || !(consumer.period_d > 0)) {
        throw std::invalid_argument("periods must be positive");
    }
    if (consumer.inputs < 1 || consumer.outputs < 1) {
        throw std::invalid_argument("consumer needs at least one input and one output");
    }
    if (buffer_capacity < 1) {
        throw std::invalid_argument("buffer capacity must be at least 1");
    }
    check_probability(level1_discard_prob, "level-1 discard probability");
    check_probability(ccz_detect_prob, "CCZ detection probability");
    check_probability(ccz_error_prob, "CCZ error probability");
    if (ccz_detect_prob + ccz_error_prob >= 1) {
        throw std::invalid_argument("CCZ detection and error probabilities must sum below 1");
    }
    if (!(bootstrap_delay_d >= 0) || !(routing_latency_d >= 0) || !(horizon_d >= 0)) {
        throw std::invalid_argument("delays and horizon must be nonnegative");
    }
}

PipelineConfig PipelineConfig::ccz_default() {
    PipelineConfig c;
    c.num_level1 = 5;
    c.level1_period_d = 3.25;
    c.level1_discard_prob = 0.03;
    c.consumer = ConsumerConfig::ccz();
    c.ccz_detect_prob = 1 - std::pow(1 - kDefaultT1Error, 8);
    c.ccz_error_prob = 28 * kDefaultT1Error * kDefaultT1Error;
    return c;
}

PipelineConfig PipelineConfig::c2t_default() {
    PipelineConfig c = ccz_default();
    c.num_level1 = 4;
    c.level1_period_d = 3.125;
    c.consumer = ConsumerConfig::c2t();
    return c;
}

PipelineStats simulate(const PipelineConfig &config, std::ostream *trace) {
    config.validate();
    return PipelineSimulation(config, trace).run();
}

double level1_effective_period(double period_d, double discard_prob) {
    if (!(discard_prob >= 0 && discard_prob < 1)) {
        throw std::invalid_argument("discard probability must lie in [0, 1)");
    }
    return period_d / (1 - discard_prob);
}

CatalystErrorStats catalyst_error_stats(uint64_t n_runs, double eps, uint64_t trials, uint64_t seed) {
    check_probability(eps, "error probability");
    if (n_runs == 0 || trials == 0) {
        throw std::invalid_argument("need at least one run and one trial");
    }
    CatalystErrorStats s;
    s.trials = trials;
    const double n = static_cast<double>(n_runs);
    s.p_any_closed_form = 1 - std::pow(1 - eps, n);
    // sum_{k=1..n} (1 - q^k) = n - q (1 - q^n) / (1 - q)
    double q = 1 - eps;
    s.mean_closed_form = eps > 0 ? n - q * (1 - std::pow(q, n)) / eps : 0.0;

    if (eps == 0) {
        return s;
    }
    std::mt19937_64 rng(seed);
    // Number of clean runs before the first erroneous one.
    std::geometric_distribution<uint64_t> first_error(eps);
    uint64_t any = 0;
    double sum = 0;
    double sum_sq = 0;
    for (uint64_t t = 0; t < trials; t++) {
        uint64_t clean = first_error(rng);
        if (clean < n_runs) {
            any++;
            double bad = static_cast<double>(n_runs - clean);
            sum += bad;
            sum_sq += bad * bad;
        }
    }
    double nt = static_cast<double>(trials);
    s.p_any_bad = any / nt;
    s.p_any_stderr = std::sqrt(s.p_any_bad * (1 - s.p_any_bad) / nt);
    s.mean_bad_count = sum / nt;
    double var = std::max(0.0, sum_sq / nt - s.mean_bad_count * s.mean_bad_count);
    s.mean_stderr = std::sqrt(var / nt);
    return s;
}

std::string stats_table(const PipelineStats &s) {
    std::ostringstream out;
    out << "outputs_produced      " << s.outputs_produced << "\n";
    out << "output_states         " << s.output_states << "\n";
    out << "discarded_runs        " << s.discarded_runs << "\n";
    out << "mean_output_period_d  " << s.mean_output_period_d << "\n";
    out << "consumer_stall_frac   " << s.consumer_stall_fraction << "\n";
    out << "catalyst_discards     " << s.catalyst_discard_events << "\n";
    out << "bad_outputs           " << s.bad_outputs << "\n";
    out << "first_bad_output      "
        << (s.first_bad_output_index.has_value() ? std::to_string(*s.first_bad_output_index) : std::string("none"))
        << "\n";
    out << "level1 attempts/discards/states  " << s.level1_attempts << " / " << s.level1_discards << " / "
        << s.level1_states << "\n";
    out << "buffer occupancy (fraction of time):\n";
    for (size_t k = 0; k < s.buffer_occupancy_histogram.size(); k++) {
        char line[64];
        std::snprintf(line, sizeof(line), "  %3zu  %.4f\n", k, s.buffer_occupancy_histogram[k]);
        out << line;
    }
    return out.str();
}

}  // namespace magicfab
