// engine.hpp
//
// The selection loop: probe one configuration, tighten its confidence interval,
// update the incumbent, prune every configuration whose upper bound is within
// epsilon of the incumbent's lower bound, refresh cached intervals whenever a
// prune happened (a snapshot), then let the scheduler pick the next probe.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abc/backend.hpp"
#include "abc/ci_estimator.hpp"
#include "abc/core.hpp"
#include "abc/random.hpp"
#include "abc/scheduler.hpp"

namespace abc {

inline std::uint64_t probe_seed(std::uint64_t run_seed, ConfigId id, std::size_t probe_index) {
    return derive_seed({run_seed, id, probe_index});
}

inline std::uint64_t full_evaluation_seed(std::uint64_t run_seed, ConfigId id) {
    return derive_seed({run_seed, id, 0xf011ULL});
}

/// Fills n_configs and the data caps from the backend.
inline RunParams bind_params(RunParams p, const ProbeBackend& backend) {
    p.n_configs = backend.size();
    p.max_train_size = backend.train_size();
    p.max_test_size = backend.test_size();
    return p;
}

/// Upper bound on rounds before remaining configurations are forced to full data.
inline std::size_t default_round_limit(const RunParams& p) {
    const double ratio = static_cast<double>(p.max_train_size) / static_cast<double>(p.initial_train_size);
    const auto steps = static_cast<std::size_t>(std::ceil(std::log(std::max(ratio, 1.0)) / std::log(p.step_factor_c)));
    return p.n_configs * (2 + steps) + p.n_configs;
}

struct EngineOptions {
    std::optional<std::size_t> round_limit;  // defaults to default_round_limit(params)
    bool warm_up{true};
};

struct RunFlags {
    std::vector<std::size_t> anomaly_rounds;
    std::vector<std::size_t> incumbent_pruned_rounds;
    bool survivor_diverged{false};
    bool forced_termination{false};
    bool budget_exhausted{false};
    bool empty_trace_warning{false};
    std::size_t degenerate_probes{0};
};

inline json to_json(const RunFlags& f) {
    return json{{"anomaly_rounds", f.anomaly_rounds},
                {"incumbent_pruned_rounds", f.incumbent_pruned_rounds},
                {"survivor_diverged", f.survivor_diverged},
                {"forced_termination", f.forced_termination},
                {"budget_exhausted", f.budget_exhausted},
                {"empty_trace_warning", f.empty_trace_warning},
                {"degenerate_probes", f.degenerate_probes}};
}

struct EngineState {
    std::vector<ConfigurationState> configs;
    ConfigId incumbent_id{1};
    std::vector<ConfigId> active_set;  // ascending ids
    std::size_t round{0};
    RunTrace trace;
    RunParams params;

    const ConfigurationState& config(ConfigId id) const { return configs.at(id - 1); }
    ConfigurationState& config(ConfigId id) { return configs.at(id - 1); }
    const ConfigurationState& incumbent() const { return config(incumbent_id); }
};

struct RunResult {
    ConfigId selected{1};
    RunTrace trace;
    RunFlags flags;
    std::vector<ConfigurationState> configs;
};

/// Best guess when stopping early: between the incumbent and the active
/// configuration with the highest upper bound, the one whose lower bound is
/// closest to the highest upper bound among all other configurations. Ties go
/// to the incumbent. Only configurations with at least one probe are eligible.
inline ConfigId anytime_best_guess(const EngineState& s) {
    const ConfigId inc = s.incumbent_id;
    std::optional<ConfigId> top;
    for (auto id : s.active_set) {
        const auto& c = s.config(id);
        if (c.probes() == 0) continue;
        if (!top || c.ci.upper > s.config(*top).ci.upper) top = id;
    }
    if (s.config(inc).probes() == 0) return top.value_or(inc);
    if (!top || *top == inc) return inc;

    auto gap = [&](ConfigId x) {
        double best_other = -std::numeric_limits<double>::infinity();
        for (const auto& c : s.configs)
            if (c.id != x) best_other = std::max(best_other, c.ci.upper);
        return best_other - s.config(x).ci.lower;
    };
    return gap(*top) < gap(inc) ? *top : inc;
}

class AbcEngine {
public:
    AbcEngine(const ProbeBackend& backend, RunParams params, SchedulerKind scheduler, EngineOptions opts = {})
        : backend_(backend), scheduler_(scheduler) {
        params.validate();
        if (params.n_configs != backend.size())
            throw std::invalid_argument("n_configs does not match the backend's configuration count");
        if (params.max_train_size != backend.train_size() || params.max_test_size != backend.test_size())
            throw std::invalid_argument("max train/test sizes do not match the backend");
        round_limit_ = opts.round_limit.value_or(default_round_limit(params));
        state_.params = params;
        state_.configs.resize(params.n_configs);
        for (std::size_t i = 0; i < params.n_configs; ++i) {
            auto& c = state_.configs[i];
            c.id = i + 1;
            c.label = backend.label(c.id);
            state_.active_set.push_back(c.id);
        }
        if (opts.warm_up) {
            for (std::size_t sweep = 0; sweep < 2; ++sweep)
                for (ConfigId id = 1; id <= params.n_configs; ++id) warm_up_.emplace_back(id, sweep);
        }
        next_ = 1;
    }

    bool finished() const { return state_.active_set.size() <= 1; }
    const EngineState& state() const { return state_; }
    const RunFlags& flags() const { return flags_; }
    ConfigId next_config() const { return next_; }

    std::pair<std::int64_t, std::int64_t> next_sizes() const { return sizes_for(state_.config(next_)); }

    /// Cost of the upcoming probe: the backend's cost model if it has one,
    /// otherwise the latest probe of that configuration scaled by size^alpha.
    std::optional<double> next_probe_cost() const {
        const auto [s_tr, s_te] = next_sizes();
        if (auto c = backend_.predicted_cost(next_, s_tr, s_te)) return c;
        const auto& cfg = state_.config(next_);
        if (cfg.history.empty()) return std::nullopt;
        const auto& last = cfg.history.back();
        const double ratio = static_cast<double>(s_tr) / static_cast<double>(last.train_sample_size);
        return last.cost * std::pow(ratio, state_.params.alpha_cost_exponent);
    }

    void step() {
        if (finished()) throw std::logic_error("engine already finished");
        const ConfigId id = next_;
        auto& cfg = state_.config(id);
        const auto [s_tr, s_te] = sizes_for(cfg);
        const auto& p = state_.params;

        ProbeOutcome outcome;
        try {
            outcome = backend_.probe(id, s_tr, s_te, probe_seed(p.seed, id, cfg.probes()));
            outcome.validate();
        } catch (const std::exception& e) {
            throw BackendError("round " + std::to_string(state_.round + 1) + ", configuration " +
                               std::to_string(id) + ": " + e.what());
        }
        ++state_.round;

        const bool full_data = s_tr >= p.max_train_size && s_te >= p.max_test_size;
        const CiEstimate est = full_data ? nest_within(cfg.cached_ci, {outcome.test_accuracy, outcome.test_accuracy})
                                         : estimate_ci(cfg.cached_ci, bound_inputs(outcome, p));
        cfg.current_sample_size = s_tr;
        cfg.current_test_size = s_te;
        cfg.ci = est.ci;
        cfg.history.push_back(outcome);
        cfg.bound_history.push_back(est.ci);
        cfg.total_cost += outcome.cost;
        state_.trace.wall_cost_total += outcome.cost;
        if (est.anomaly) flags_.anomaly_rounds.push_back(state_.round);
        if (outcome.degenerate_sample) ++flags_.degenerate_probes;

        update_incumbent();

        RoundRecord rec;
        rec.round = state_.round;
        rec.config_id = id;
        rec.outcome = outcome;
        rec.ci = est.ci;
        rec.incumbent_id = state_.incumbent_id;
        rec.anomaly = est.anomaly;

        const double inc_lower = state_.incumbent().ci.lower;
        std::vector<ConfigId> survivors;
        for (auto a : state_.active_set) {
            auto& c = state_.config(a);
            if (c.ci.upper - inc_lower <= p.epsilon) {
                c.active = false;
                rec.pruned_ids.push_back(a);
            } else {
                survivors.push_back(a);
            }
        }
        state_.active_set = std::move(survivors);
        if (!rec.pruned_ids.empty()) {
            rec.snapshot = true;
            for (auto a : state_.active_set) state_.config(a).cached_ci = state_.config(a).ci;
            if (std::find(rec.pruned_ids.begin(), rec.pruned_ids.end(), state_.incumbent_id) != rec.pruned_ids.end())
                flags_.incumbent_pruned_rounds.push_back(state_.round);
        }
        state_.trace.rounds.push_back(std::move(rec));

        if (!finished()) next_ = choose_next();
    }

    RunResult result() const {
        RunResult r;
        r.selected = state_.incumbent_id;
        r.trace = state_.trace;
        r.trace.final_selection = r.selected;
        r.flags = flags_;
        if (state_.active_set.size() == 1 && state_.active_set.front() != state_.incumbent_id)
            r.flags.survivor_diverged = true;
        r.configs = state_.configs;
        return r;
    }

private:
    std::pair<std::int64_t, std::int64_t> sizes_for(const ConfigurationState& c) const {
        const auto& p = state_.params;
        if (forced_) return {p.max_train_size, p.max_test_size};
        if (c.probes() == 0) return {p.initial_train_size, p.initial_test_size};
        const auto s_tr = next_sample_size(c.current_sample_size, p.step_factor_c, p.max_train_size);
        if (s_tr >= p.max_train_size) return {p.max_train_size, p.max_test_size};
        return {s_tr, next_sample_size(c.current_test_size, p.step_factor_c, p.max_test_size)};
    }

    // Incumbent is the configuration with the largest lower bound; it changes only
    // on a strict improvement, and ties among challengers go to the lowest id.
    void update_incumbent() {
        const ConfigId current = state_.incumbent_id;
        std::optional<ConfigId> best;
        if (state_.config(current).probes() > 0) best = current;
        for (const auto& c : state_.configs) {
            if (c.probes() > 0 && (!best || c.ci.lower > state_.config(*best).ci.lower)) best = c.id;
        }
        state_.incumbent_id = best.value_or(current);
    }

    ConfigId choose_next() {
        if (!forced_ && state_.round >= round_limit_) {
            forced_ = true;
            flags_.forced_termination = true;
        }
        if (forced_) return state_.active_set.front();

        while (warm_up_pos_ < warm_up_.size()) {
            const auto [id, sweep] = warm_up_[warm_up_pos_++];
            const auto& c = state_.config(id);
            if (c.active && c.probes() == sweep) return id;
        }

        std::vector<Candidate> cands;
        std::map<ConfigId, GradientEstimate> grads;
        for (auto a : state_.active_set) {
            const auto& c = state_.config(a);
            cands.push_back(candidate_of(c));
            if (scheduler_ == SchedulerKind::GradientCI && c.probes() >= 2) grads.emplace(a, gradient_estimate(c));
        }
        if (scheduler_ == SchedulerKind::GradientCI) {
            // Without a warm-up some candidates may lack two probes; probe those first.
            for (const auto& c : cands)
                if (c.probes < 2) return c.id;
        }
        return pick_next(scheduler_, cands, grads);
    }

    const ProbeBackend& backend_;
    SchedulerKind scheduler_;
    EngineState state_;
    RunFlags flags_;
    ConfigId next_{1};
    std::vector<std::pair<ConfigId, std::size_t>> warm_up_;
    std::size_t warm_up_pos_{0};
    std::size_t round_limit_{0};
    bool forced_{false};
};

inline RunResult run_abc(const ProbeBackend& backend, const RunParams& params, SchedulerKind scheduler,
                         EngineOptions opts = {}) {
    AbcEngine engine(backend, params, scheduler, opts);
    while (!engine.finished()) engine.step();
    return engine.result();
}

/// Runs the selection loop but stops before any probe that would push the
/// accumulated cost past `cost_budget`, returning the anytime best guess. When
/// a probe's cost cannot be predicted it runs, and the loop stops right after
/// the budget is crossed.
inline RunResult select_with_budget(const ProbeBackend& backend, const RunParams& params, SchedulerKind scheduler,
                                    double cost_budget, EngineOptions opts = {}) {
    if (!(cost_budget > 0.0)) throw std::invalid_argument("cost budget must be > 0");
    AbcEngine engine(backend, params, scheduler, opts);
    double spent = 0.0;
    bool exhausted = false;
    while (!engine.finished()) {
        const auto predicted = engine.next_probe_cost();
        if (predicted && spent + *predicted > cost_budget) {
            exhausted = true;
            break;
        }
        engine.step();
        spent += engine.state().trace.rounds.back().outcome.cost;
        if (!predicted && spent > cost_budget) {
            exhausted = true;
            break;
        }
    }
    RunResult r = engine.result();
    if (exhausted) {
        r.flags.budget_exhausted = true;
        if (engine.state().trace.rounds.empty()) {
            r.flags.empty_trace_warning = true;
            r.selected = 1;
        } else {
            r.selected = anytime_best_guess(engine.state());
        }
        r.trace.final_selection = r.selected;
    }
    return r;
}

}  // namespace abc
