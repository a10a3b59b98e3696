// baselines.hpp
//
// Full-run trains every configuration on all data. Successive-halving probes
// every survivor at the current sample sizes, keeps the better half by sampled
// test accuracy, doubles the sizes and repeats.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "abc/backend.hpp"
#include "abc/core.hpp"
#include "abc/engine.hpp"

namespace abc {

struct FullRunResult {
    ConfigId best{1};
    std::vector<double> accuracies;  // index id - 1
    std::vector<double> costs;
    double total_cost{0.0};
};

/// Argmax with ties going to the lowest id.
inline ConfigId argmax_id(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("argmax over an empty list");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best + 1;
}

inline FullRunResult full_run(const ProbeBackend& backend, std::uint64_t seed = 0) {
    FullRunResult r;
    for (ConfigId id = 1; id <= backend.size(); ++id) {
        const auto ev = backend.full_evaluate(id, full_evaluation_seed(seed, id));
        r.accuracies.push_back(ev.accuracy);
        r.costs.push_back(ev.cost);
        r.total_cost += ev.cost;
    }
    r.best = argmax_id(r.accuracies);
    return r;
}

struct HalvingParams {
    std::int64_t initial_train_size{1000};
    std::int64_t initial_test_size{2000};
    double growth{2.0};
    std::uint64_t seed{0};

    void validate() const {
        if (initial_train_size < 1 || initial_test_size < 1)
            throw std::invalid_argument("halving sample sizes must be >= 1");
        if (!(growth > 1.0)) throw std::invalid_argument("halving growth factor must be > 1");
    }
};

struct HalvingResult {
    ConfigId selected{1};
    RunTrace trace;                          // ci is the point [acc_test, acc_test]
    std::vector<std::size_t> survivor_counts;  // configurations probed in each round, then the final 1
    double total_cost{0.0};
};

/// Round r probes at size index r, using the same seed the engine uses for the
/// r-th probe of a configuration, so both methods see identical outcomes for
/// identical (configuration, size) pairs.
inline HalvingResult successive_halving(const ProbeBackend& backend, const HalvingParams& hp) {
    hp.validate();
    if (hp.initial_train_size > backend.train_size() || hp.initial_test_size > backend.test_size())
        throw std::invalid_argument("halving initial sizes exceed the data");
    HalvingResult res;
    std::vector<ConfigId> alive(backend.size());
    std::iota(alive.begin(), alive.end(), ConfigId{1});
    std::int64_t s_tr = hp.initial_train_size;
    std::int64_t s_te = hp.initial_test_size;
    std::size_t round_index = 0;
    std::size_t record_no = 0;

    while (alive.size() > 1) {
        res.survivor_counts.push_back(alive.size());
        std::vector<std::pair<double, ConfigId>> scored;
        ConfigId leader = alive.front();
        double leader_acc = -1.0;
        for (auto id : alive) {
            ProbeOutcome out;
            try {
                out = backend.probe(id, s_tr, s_te, probe_seed(hp.seed, id, round_index));
            } catch (const std::exception& e) {
                throw BackendError("halving round " + std::to_string(round_index + 1) + ", configuration " +
                                   std::to_string(id) + ": " + e.what());
            }
            res.total_cost += out.cost;
            scored.emplace_back(out.test_accuracy, id);
            if (out.test_accuracy > leader_acc) {
                leader_acc = out.test_accuracy;
                leader = id;
            }
            RoundRecord rec;
            rec.round = ++record_no;
            rec.config_id = id;
            rec.outcome = out;
            rec.ci = {out.test_accuracy, out.test_accuracy};
            rec.incumbent_id = leader;
            res.trace.rounds.push_back(rec);
            res.trace.wall_cost_total += out.cost;
        }
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const std::size_t keep = (scored.size() + 1) / 2;
        alive.clear();
        auto& last = res.trace.rounds.back();
        for (std::size_t k = 0; k < scored.size(); ++k) {
            if (k < keep) alive.push_back(scored[k].second);
            else last.pruned_ids.push_back(scored[k].second);
        }
        std::sort(alive.begin(), alive.end());
        std::sort(last.pruned_ids.begin(), last.pruned_ids.end());
        last.snapshot = !last.pruned_ids.empty();
        s_tr = next_sample_size(s_tr, hp.growth, backend.train_size());
        s_te = next_sample_size(s_te, hp.growth, backend.test_size());
        ++round_index;
    }
    res.survivor_counts.push_back(alive.size());
    res.selected = alive.front();
    res.trace.final_selection = res.selected;
    return res;
}

inline double relative_accuracy_loss(double a_best, double a_selected) {
    if (!(a_best > 0.0)) throw std::invalid_argument("relative accuracy loss needs a_best > 0");
    return std::abs(a_best - a_selected) / a_best;
}

}  // namespace abc
