// core.hpp
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace abc {

using json = nlohmann::ordered_json;

/// 1-based configuration index, assigned in input order.
using ConfigId = std::size_t;

struct ConfidenceInterval {
    double lower{0.0};
    double upper{1.0};

    double width() const { return upper - lower; }
    bool contains(double a) const { return lower <= a && a <= upper; }
    bool within(const ConfidenceInterval& outer) const {
        return outer.lower <= lower && upper <= outer.upper;
    }
    friend bool operator==(const ConfidenceInterval&, const ConfidenceInterval&) = default;
};

/// Clamps a raw interval into [0,1]. An interval that inverts after clamping
/// collapses to its (clipped) midpoint.
inline ConfidenceInterval clamp_interval(double raw_lower, double raw_upper) {
    const double lo = std::max(0.0, raw_lower);
    const double hi = std::min(1.0, raw_upper);
    if (lo <= hi) return {lo, hi};
    const double m = std::clamp(0.5 * (raw_lower + raw_upper), 0.0, 1.0);
    return {m, m};
}

struct ProbeOutcome {
    std::int64_t train_sample_size{1};
    std::int64_t test_sample_size{1};
    double train_accuracy{0.0};
    double test_accuracy{0.0};
    double cost{0.0};
    // Training sample held a single class; the learner fell back to a constant model.
    bool degenerate_sample{false};

    void validate() const {
        if (train_sample_size < 1) throw std::invalid_argument("probe outcome: train_sample_size must be >= 1");
        if (test_sample_size < 1) throw std::invalid_argument("probe outcome: test_sample_size must be >= 1");
        if (!(train_accuracy >= 0.0 && train_accuracy <= 1.0))
            throw std::invalid_argument("probe outcome: train_accuracy outside [0,1]");
        if (!(test_accuracy >= 0.0 && test_accuracy <= 1.0))
            throw std::invalid_argument("probe outcome: test_accuracy outside [0,1]");
        if (!(cost >= 0.0)) throw std::invalid_argument("probe outcome: cost must be >= 0");
    }
};

struct RunParams {
    double epsilon{0.01};
    double delta{0.5};
    std::size_t n_configs{1};
    std::int64_t initial_train_size{1000};
    std::int64_t initial_test_size{2000};
    double step_factor_c{2.0};
    double alpha_cost_exponent{1.0};
    std::int64_t max_train_size{1};
    std::int64_t max_test_size{1};
    std::uint64_t seed{0};

    void validate() const {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0,1]");
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
        if (n_configs < 1) throw std::invalid_argument("n_configs must be >= 1");
        if (initial_train_size < 1) throw std::invalid_argument("initial_train_size must be >= 1");
        if (initial_test_size < 1) throw std::invalid_argument("initial_test_size must be >= 1");
        if (initial_train_size > max_train_size)
            throw std::invalid_argument("initial_train_size exceeds max_train_size");
        if (initial_test_size > max_test_size)
            throw std::invalid_argument("initial_test_size exceeds max_test_size");
        if (!(step_factor_c > 1.0)) throw std::invalid_argument("step_factor_c must be > 1");
        if (!(alpha_cost_exponent > 0.0)) throw std::invalid_argument("alpha_cost_exponent must be > 0");
    }
};

inline json to_json(const RunParams& p) {
    return json{{"epsilon", p.epsilon},
                {"delta", p.delta},
                {"n_configs", p.n_configs},
                {"initial_train_size", p.initial_train_size},
                {"initial_test_size", p.initial_test_size},
                {"step_factor_c", p.step_factor_c},
                {"alpha_cost_exponent", p.alpha_cost_exponent},
                {"max_train_size", p.max_train_size},
                {"max_test_size", p.max_test_size},
                {"seed", p.seed}};
}

inline RunParams run_params_from_json(const json& j) {
    RunParams p;
    p.epsilon = j.at("epsilon").get<double>();
    p.delta = j.at("delta").get<double>();
    p.n_configs = j.at("n_configs").get<std::size_t>();
    p.initial_train_size = j.at("initial_train_size").get<std::int64_t>();
    p.initial_test_size = j.at("initial_test_size").get<std::int64_t>();
    p.step_factor_c = j.at("step_factor_c").get<double>();
    p.alpha_cost_exponent = j.at("alpha_cost_exponent").get<double>();
    p.max_train_size = j.at("max_train_size").get<std::int64_t>();
    p.max_test_size = j.at("max_test_size").get<std::int64_t>();
    p.seed = j.at("seed").get<std::uint64_t>();
    return p;
}

struct ConfigurationState {
    ConfigId id{1};
    std::string label;
    std::int64_t current_sample_size{0};  // train size of the latest probe, 0 before any probe
    std::int64_t current_test_size{0};
    ConfidenceInterval ci{};
    ConfidenceInterval cached_ci{};  // interval at the most recent snapshot
    std::vector<ProbeOutcome> history;
    std::vector<ConfidenceInterval> bound_history;  // ci after each probe, parallel to history
    double total_cost{0.0};
    bool active{true};

    std::size_t probes() const { return history.size(); }
    bool saturated(std::int64_t max_train, std::int64_t max_test) const {
        return current_sample_size >= max_train && current_test_size >= max_test;
    }
};

struct RoundRecord {
    std::size_t round{0};
    ConfigId config_id{0};
    ProbeOutcome outcome{};
    ConfidenceInterval ci{};
    ConfigId incumbent_id{0};
    std::vector<ConfigId> pruned_ids;
    bool snapshot{false};
    // Not serialized: the new bounds were disjoint from the cached interval.
    bool anomaly{false};
};

struct RunTrace {
    std::vector<RoundRecord> rounds;
    ConfigId final_selection{0};
    double wall_cost_total{0.0};

    std::size_t snapshot_count() const {
        return static_cast<std::size_t>(
            std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) { return r.snapshot; }));
    }
};

inline json to_json(const RoundRecord& r) {
    return json{{"round", r.round},
                {"config_id", r.config_id},
                {"s_tr", r.outcome.train_sample_size},
                {"s_te", r.outcome.test_sample_size},
                {"acc_train", r.outcome.train_accuracy},
                {"acc_test", r.outcome.test_accuracy},
                {"cost", r.outcome.cost},
                {"lower", r.ci.lower},
                {"upper", r.ci.upper},
                {"incumbent", r.incumbent_id},
                {"pruned", r.pruned_ids},
                {"snapshot", r.snapshot}};
}

inline RoundRecord round_record_from_json(const json& j) {
    RoundRecord r;
    r.round = j.at("round").get<std::size_t>();
    r.config_id = j.at("config_id").get<ConfigId>();
    r.outcome.train_sample_size = j.at("s_tr").get<std::int64_t>();
    r.outcome.test_sample_size = j.at("s_te").get<std::int64_t>();
    r.outcome.train_accuracy = j.at("acc_train").get<double>();
    r.outcome.test_accuracy = j.at("acc_test").get<double>();
    r.outcome.cost = j.at("cost").get<double>();
    r.ci.lower = j.at("lower").get<double>();
    r.ci.upper = j.at("upper").get<double>();
    r.incumbent_id = j.at("incumbent").get<ConfigId>();
    r.pruned_ids = j.at("pruned").get<std::vector<ConfigId>>();
    r.snapshot = j.at("snapshot").get<bool>();
    return r;
}

/// One JSON object per round, fixed key order.
inline void write_jsonl(std::ostream& os, const RunTrace& trace) {
    for (const auto& r : trace.rounds) os << to_json(r).dump() << '\n';
}

inline RunTrace read_jsonl(std::istream& is) {
    RunTrace trace;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            trace.rounds.push_back(round_record_from_json(json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + e.what());
        }
        trace.wall_cost_total += trace.rounds.back().outcome.cost;
    }
    if (!trace.rounds.empty()) trace.final_selection = trace.rounds.back().incumbent_id;
    return trace;
}

}  // namespace abc
