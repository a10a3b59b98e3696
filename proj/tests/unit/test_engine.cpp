#include <limits>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "abc/audit.hpp"
#include "abc/baselines.hpp"
#include "abc/engine.hpp"
#include "abc/instances.hpp"
#include "abc/synthetic.hpp"

using namespace abc;

namespace {

SyntheticInstance two_configs() {
    SyntheticInstance inst;
    inst.name = "two";
    inst.train_size = 1'000'000;
    inst.test_size = 500'000;
    inst.configs.push_back(instances::smooth_curve("good", 0.90, 0.5, 0.5, 1.0));
    inst.configs.push_back(instances::smooth_curve("poor", 0.70, 0.5, 0.5, 1.0));
    return inst;
}

RunParams params_for(const ProbeBackend& b, double eps = 0.01, std::uint64_t seed = 1) {
    RunParams p;
    p.epsilon = eps;
    p.seed = seed;
    return bind_params(p, b);
}

std::string dump(const RunTrace& t) {
    std::ostringstream os;
    write_jsonl(os, t);
    return os.str();
}

}  // namespace

TEST(Engine, SingleConfigurationNeedsNoProbe) {
    auto inst = two_configs().first(1);
    SyntheticBackend b(inst);
    const auto r = run_abc(b, params_for(b), SchedulerKind::GradientCI);
    EXPECT_EQ(r.selected, 1u);
    EXPECT_TRUE(r.trace.rounds.empty());
}

TEST(Engine, SeparatedPairPicksTheBetter) {
    SyntheticBackend b(two_configs());
    for (auto kind : {SchedulerKind::GradientCI, SchedulerKind::UCB, SchedulerKind::RoundRobin}) {
        const auto r = run_abc(b, params_for(b), kind);
        EXPECT_EQ(r.selected, 1u) << to_string(kind);
        EXPECT_EQ(full_run(b).best, 1u);
    }
}

TEST(Engine, VacuousToleranceStopsAtFirstPruningOpportunity) {
    SyntheticBackend b(two_configs());
    const auto r = run_abc(b, params_for(b, 1.0), SchedulerKind::GradientCI);
    ASSERT_EQ(r.trace.rounds.size(), 1u);
    EXPECT_TRUE(r.trace.rounds[0].snapshot);
    EXPECT_EQ(r.selected, 1u);
}

TEST(Engine, RejectsParamsThatDoNotMatchBackend) {
    SyntheticBackend b(two_configs());
    auto p = params_for(b);
    p.n_configs = 3;
    EXPECT_THROW(AbcEngine(b, p, SchedulerKind::UCB), std::invalid_argument);
}

TEST(Engine, WarmUpProbesEveryConfigurationTwiceInAscendingOrder) {
    auto inst = instances::close_race(4, 6);
    SyntheticBackend b(inst);
    const auto r = run_abc(b, params_for(b, 0.0), SchedulerKind::UCB);
    ASSERT_GE(r.trace.rounds.size(), 12u);
    std::vector<ConfigId> expect;
    std::set<ConfigId> pruned;
    for (int sweep = 0; sweep < 2; ++sweep)
        for (ConfigId id = 1; id <= 6; ++id) expect.push_back(id);
    std::size_t k = 0;
    for (auto id : expect) {
        if (pruned.contains(id)) continue;
        ASSERT_EQ(r.trace.rounds[k].config_id, id) << "round " << k + 1;
        for (auto p : r.trace.rounds[k].pruned_ids) pruned.insert(p);
        ++k;
    }
}

TEST(Engine, SampleSizesGrowGeometrically) {
    SyntheticBackend b(instances::paper_shaped(101, 5, 4'000'000, 1'000'000));
    const auto r = run_abc(b, params_for(b), SchedulerKind::GradientCI);
    for (const auto& c : r.configs) {
        for (std::size_t k = 0; k < c.history.size(); ++k) {
            const auto& h = c.history[k];
            if (k == 0) {
                EXPECT_EQ(h.train_sample_size, 1000);
                EXPECT_EQ(h.test_sample_size, 2000);
            } else if (h.train_sample_size < b.train_size()) {
                EXPECT_EQ(h.train_sample_size, 2 * c.history[k - 1].train_sample_size);
                EXPECT_EQ(h.test_sample_size, std::min<std::int64_t>(2 * c.history[k - 1].test_sample_size, b.test_size()));
            } else {
                EXPECT_EQ(h.test_sample_size, b.test_size());
            }
        }
    }
}

TEST(Engine, FullDataProbeCollapsesToMeasuredAccuracy) {
    // Tiny data so configurations saturate quickly.
    SyntheticInstance inst;
    inst.name = "tiny";
    inst.train_size = 8000;
    inst.test_size = 4000;
    inst.configs.push_back(instances::smooth_curve("a", 0.80, 0.3, 0.5, 1.0));
    inst.configs.push_back(instances::smooth_curve("b", 0.795, 0.3, 0.5, 1.0));
    SyntheticBackend b(inst);
    const auto r = run_abc(b, params_for(b, 0.0), SchedulerKind::RoundRobin);
    bool saw_full = false;
    for (const auto& rec : r.trace.rounds) {
        if (rec.outcome.train_sample_size == inst.train_size) {
            saw_full = true;
            EXPECT_EQ(rec.outcome.test_sample_size, inst.test_size);
            EXPECT_EQ(rec.ci.lower, rec.ci.upper);
            EXPECT_EQ(rec.outcome.test_accuracy, inst.real_accuracy(rec.config_id));
        }
    }
    EXPECT_TRUE(saw_full);
    EXPECT_EQ(r.selected, 1u);
    EXPECT_TRUE(audit_trace(r.trace, params_for(b, 0.0)).ok());
}

TEST(Engine, IdenticalSeedsGiveIdenticalTraces) {
    SyntheticBackend b(instances::close_race(2, 10));
    for (auto kind : {SchedulerKind::GradientCI, SchedulerKind::UCB, SchedulerKind::RoundRobin}) {
        const auto x = run_abc(b, params_for(b, 0.01, 77), kind);
        const auto y = run_abc(b, params_for(b, 0.01, 77), kind);
        EXPECT_EQ(dump(x.trace), dump(y.trace));
        const auto z = run_abc(b, params_for(b, 0.01, 78), kind);
        EXPECT_NE(dump(x.trace), dump(z.trace));
    }
}

TEST(Engine, TracesSatisfyStructuralInvariants) {
    for (std::uint64_t s = 0; s < 10; ++s) {
        SyntheticBackend b(instances::close_race(s, 8));
        for (auto kind : {SchedulerKind::GradientCI, SchedulerKind::UCB, SchedulerKind::RoundRobin}) {
            const auto p = params_for(b, 0.01, s);
            const auto r = run_abc(b, p, kind);
            const auto rep = audit_trace(r.trace, p);
            EXPECT_TRUE(rep.ok()) << format_audit(rep);
            // n - 1 configurations pruned unless the incumbent pruned itself too
            std::size_t pruned = 0;
            for (const auto& rec : r.trace.rounds) pruned += rec.pruned_ids.size();
            EXPECT_GE(pruned, b.size() - 1);
            EXPECT_LT(r.trace.snapshot_count(), b.size());
        }
    }
}

TEST(Engine, IncumbentLowerBoundNeverDecreasesAcrossSnapshots) {
    SyntheticBackend b(instances::paper_shaped(7, 10, 4'000'000, 1'000'000));
    const auto r = run_abc(b, params_for(b), SchedulerKind::GradientCI);
    double last = -1.0;
    std::map<ConfigId, double> lower;
    for (const auto& rec : r.trace.rounds) {
        lower[rec.config_id] = rec.ci.lower;
        if (rec.snapshot) {
            EXPECT_GE(lower[rec.incumbent_id], last);
            last = lower[rec.incumbent_id];
        }
    }
}

TEST(Engine, RoundGuardForcesFullDataEvaluation) {
    SyntheticBackend b(instances::close_race(1, 5));
    EngineOptions opts;
    opts.round_limit = 3;
    const auto p = params_for(b, 0.0);
    const auto r = run_abc(b, p, SchedulerKind::GradientCI, opts);
    EXPECT_TRUE(r.flags.forced_termination);
    EXPECT_TRUE(audit_trace(r.trace, p).ok());
    for (std::size_t k = 3; k < r.trace.rounds.size(); ++k)
        EXPECT_EQ(r.trace.rounds[k].outcome.train_sample_size, b.train_size());
    EXPECT_EQ(r.selected, full_run(b).best);
}

TEST(Engine, DefaultRoundLimit) {
    RunParams p;
    p.n_configs = 10;
    p.initial_train_size = 1000;
    p.max_train_size = 1'000'000;
    // log2(1000) = 9.97 -> 10 steps
    EXPECT_EQ(default_round_limit(p), 10u * 12u + 10u);
}

TEST(Engine, BackendErrorsCarryRoundContext) {
    class Failing final : public ProbeBackend {
    public:
        std::size_t size() const override { return 2; }
        std::string label(ConfigId id) const override { return std::to_string(id); }
        std::int64_t train_size() const override { return 10'000; }
        std::int64_t test_size() const override { return 10'000; }
        ProbeOutcome probe(ConfigId id, std::int64_t, std::int64_t, std::uint64_t) const override {
            if (id == 2) throw std::runtime_error("disk on fire");
            return {1000, 2000, 0.9, 0.9, 1.0, false};
        }
        FullEvaluation full_evaluate(ConfigId, std::uint64_t) const override { return {0.9, 1.0}; }
    } b;
    RunParams p = params_for(b);
    p.epsilon = 0.0;
    try {
        run_abc(b, p, SchedulerKind::UCB);
        FAIL();
    } catch (const BackendError& e) {
        EXPECT_NE(std::string(e.what()).find("round 2, configuration 2: disk on fire"), std::string::npos);
    }
}

TEST(AnytimeBestGuess, SmallerGapWins) {
    EngineState s;
    s.configs.resize(3);
    for (std::size_t i = 0; i < 3; ++i) {
        s.configs[i].id = i + 1;
        s.configs[i].history.resize(1);
        s.active_set.push_back(i + 1);
    }
    // incumbent 1: l=0.80, others' max u = 0.84 -> gap 0.04
    // top 2: u=0.86, l=0.78, others' max u = 0.84 -> gap 0.06
    s.configs[0].ci = {0.80, 0.83};
    s.configs[1].ci = {0.78, 0.86};
    s.configs[2].ci = {0.50, 0.84};
    s.incumbent_id = 1;
    EXPECT_EQ(anytime_best_guess(s), 1u);
    // now top 2: l=0.79, others' max u = 0.80 -> gap 0.01; incumbent gap 0.08
    s.configs[1].ci = {0.79, 0.86};
    s.configs[0].ci = {0.78, 0.80};
    s.configs[2].ci = {0.50, 0.80};
    EXPECT_EQ(anytime_best_guess(s), 2u);
}

TEST(AnytimeBestGuess, TieGoesToIncumbentAndSingleProbedWins) {
    EngineState s;
    s.configs.resize(2);
    for (std::size_t i = 0; i < 2; ++i) {
        s.configs[i].id = i + 1;
        s.active_set.push_back(i + 1);
    }
    s.configs[0].history.resize(1);
    s.configs[0].ci = {0.6, 0.8};
    s.incumbent_id = 1;
    EXPECT_EQ(anytime_best_guess(s), 1u);  // only probed configuration
    s.configs[1].history.resize(1);
    s.configs[0].ci = {0.70, 0.80};
    s.configs[1].ci = {0.60, 0.90};
    // gaps: incumbent 0.90 - 0.70 = 0.20, top 0.80 - 0.60 = 0.20
    EXPECT_EQ(anytime_best_guess(s), 1u);
}

TEST(Budget, UnlimitedBudgetMatchesRunAbc) {
    SyntheticBackend b(instances::paper_shaped(3, 8, 4'000'000, 1'000'000));
    const auto p = params_for(b);
    const auto x = run_abc(b, p, SchedulerKind::GradientCI);
    const auto y = select_with_budget(b, p, SchedulerKind::GradientCI, std::numeric_limits<double>::infinity());
    EXPECT_EQ(x.selected, y.selected);
    EXPECT_EQ(dump(x.trace), dump(y.trace));
    EXPECT_FALSE(y.flags.budget_exhausted);
}

TEST(Budget, BelowFirstProbeReturnsFirstConfigurationWithWarning) {
    SyntheticBackend b(two_configs());
    const auto r = select_with_budget(b, params_for(b), SchedulerKind::GradientCI, 1.0);
    EXPECT_EQ(r.selected, 1u);
    EXPECT_TRUE(r.flags.empty_trace_warning);
    EXPECT_TRUE(r.trace.rounds.empty());
    EXPECT_THROW(select_with_budget(b, params_for(b), SchedulerKind::GradientCI, 0.0), std::invalid_argument);
}

TEST(Budget, NeverExceedsBudgetWithCostModel) {
    SyntheticBackend b(instances::adversarial_plateau(0, 8));
    const auto p = params_for(b);
    for (double budget : {5e3, 5e4, 5e5, 5e6}) {
        const auto r = select_with_budget(b, p, SchedulerKind::UCB, budget);
        EXPECT_LE(r.trace.wall_cost_total, budget);
        EXPECT_TRUE(audit_trace(r.trace, p).ok());
    }
}
