// scheduler.hpp
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abc/core.hpp"

namespace abc {

enum class SchedulerKind { GradientCI, UCB, RoundRobin };

inline std::string_view to_string(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::GradientCI: return "gradient_ci";
        case SchedulerKind::UCB: return "ucb";
        case SchedulerKind::RoundRobin: return "round_robin";
    }
    return "?";
}

inline SchedulerKind parse_scheduler(std::string_view s) {
    if (s == "gradient_ci") return SchedulerKind::GradientCI;
    if (s == "ucb") return SchedulerKind::UCB;
    if (s == "round_robin") return SchedulerKind::RoundRobin;
    throw std::invalid_argument("unknown scheduler '" + std::string(s) + "' (expected gradient_ci, ucb or round_robin)");
}

/// What a picker needs to know about one active configuration.
struct Candidate {
    ConfigId id{0};
    ConfidenceInterval ci{};
    std::size_t probes{0};
};

inline Candidate candidate_of(const ConfigurationState& c) { return {c.id, c.ci, c.probes()}; }

struct GradientEstimate {
    double delta_cost{0.0};
    double delta_lower{0.0};
    double delta_upper{0.0};
};

/// Differences between the two most recent probes of a configuration.
inline GradientEstimate gradient_estimate(const ConfigurationState& c) {
    const auto k = c.history.size();
    if (k < 2 || c.bound_history.size() != k)
        throw std::logic_error("gradient estimate needs two probes of configuration " + std::to_string(c.id));
    GradientEstimate g;
    g.delta_cost = std::max(0.0, c.history[k - 1].cost - c.history[k - 2].cost);
    g.delta_lower = c.bound_history[k - 1].lower - c.bound_history[k - 2].lower;
    g.delta_upper = c.bound_history[k - 1].upper - c.bound_history[k - 2].upper;
    return g;
}

/// Step factor minimising the worst-case ratio of accumulated to optimal probe
/// time when T(s) = s^alpha.
inline double optimal_step_size(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("optimal_step_size: alpha must be > 0");
    return std::pow(2.0, 1.0 / alpha);
}

inline std::int64_t next_sample_size(std::int64_t current, double c, std::int64_t cap) {
    if (current >= cap) return cap;
    const double grown = std::round(c * static_cast<double>(current));
    const auto next = std::max<std::int64_t>(current + 1, static_cast<std::int64_t>(grown));
    return std::min(cap, next);
}

/// Active configurations ordered by upper bound, highest first (ties: lower id).
inline std::vector<Candidate> sorted_by_upper(std::span<const Candidate> active) {
    std::vector<Candidate> v(active.begin(), active.end());
    std::stable_sort(v.begin(), v.end(), [](const Candidate& a, const Candidate& b) {
        if (a.ci.upper != b.ci.upper) return a.ci.upper > b.ci.upper;
        return a.id < b.id;
    });
    return v;
}

inline ConfigId gradient_ci_pick(std::span<const Candidate> active, const std::map<ConfigId, GradientEstimate>& grads) {
    if (active.size() < 2) throw std::logic_error("gradient_ci_pick needs at least two active configurations");
    for (const auto& c : active) {
        if (c.probes < 2 || !grads.contains(c.id))
            throw std::logic_error("gradient_ci_pick: configuration " + std::to_string(c.id) +
                                   " has fewer than two probes");
    }
    const auto order = sorted_by_upper(active);
    const auto& top = grads.at(order[0].id);
    const double g_top = top.delta_lower > 0.0 ? top.delta_cost / top.delta_lower
                                               : std::numeric_limits<double>::infinity();
    double g_rest = 0.0;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& g = grads.at(order[k].id);
        if (g.delta_upper < 0.0) g_rest += std::abs(g.delta_cost / g.delta_upper);
    }
    return g_top <= g_rest ? order[0].id : order[1].id;
}

inline ConfigId ucb_pick(std::span<const Candidate> active) {
    if (active.empty()) throw std::logic_error("ucb_pick on an empty set");
    return sorted_by_upper(active).front().id;
}

inline ConfigId round_robin_pick(std::span<const Candidate> active) {
    if (active.empty()) throw std::logic_error("round_robin_pick on an empty set");
    const auto it = std::min_element(active.begin(), active.end(), [](const Candidate& a, const Candidate& b) {
        if (a.probes != b.probes) return a.probes < b.probes;
        return a.id < b.id;
    });
    return it->id;
}

inline ConfigId pick_next(SchedulerKind kind, std::span<const Candidate> active,
                          const std::map<ConfigId, GradientEstimate>& grads) {
    switch (kind) {
        case SchedulerKind::GradientCI:
            if (active.size() == 1) return active.front().id;
            return gradient_ci_pick(active, grads);
        case SchedulerKind::UCB: return ucb_pick(active);
        case SchedulerKind::RoundRobin: return round_robin_pick(active);
    }
    throw std::logic_error("unknown scheduler kind");
}

}  // namespace abc
