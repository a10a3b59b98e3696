#include <numeric>

#include <gtest/gtest.h>

#include "abc/baselines.hpp"
#include "abc/engine.hpp"
#include "abc/instances.hpp"

using namespace abc;

TEST(FullRun, ArgmaxTakesFirstOfTies) {
    EXPECT_EQ(argmax_id({0.80, 0.85, 0.85}), 2u);
    EXPECT_EQ(argmax_id({0.9}), 1u);
    EXPECT_THROW(argmax_id({}), std::invalid_argument);
}

TEST(FullRun, MatchesGroundTruthOnSimulator) {
    SyntheticBackend b(instances::close_race(4, 6));
    const auto fr = full_run(b, 3);
    ASSERT_EQ(fr.accuracies.size(), 6u);
    for (ConfigId id = 1; id <= 6; ++id) EXPECT_EQ(fr.accuracies[id - 1], *b.ground_truth(id));
    EXPECT_DOUBLE_EQ(fr.total_cost, std::accumulate(fr.costs.begin(), fr.costs.end(), 0.0));
}

TEST(SuccessiveHalving, SurvivorCountsHalveRoundingUp) {
    SyntheticBackend b8(instances::close_race(1, 8));
    const auto r8 = successive_halving(b8, {});
    EXPECT_EQ(r8.survivor_counts, (std::vector<std::size_t>{8, 4, 2, 1}));
    EXPECT_EQ(r8.trace.rounds.size(), 14u);

    SyntheticBackend b5(instances::close_race(1, 5));
    const auto r5 = successive_halving(b5, {});
    EXPECT_EQ(r5.survivor_counts, (std::vector<std::size_t>{5, 3, 2, 1}));
    EXPECT_EQ(r5.trace.rounds.size(), 10u);
}

TEST(SuccessiveHalving, SizesDoubleEachRound) {
    SyntheticBackend b(instances::close_race(2, 4));
    const auto r = successive_halving(b, {});
    ASSERT_EQ(r.trace.rounds.size(), 6u);
    EXPECT_EQ(r.trace.rounds[0].outcome.train_sample_size, 1000);
    EXPECT_EQ(r.trace.rounds[4].outcome.train_sample_size, 2000);
    EXPECT_EQ(r.trace.rounds[5].outcome.test_sample_size, 4000);
    double cost = 0.0;
    for (const auto& rec : r.trace.rounds) cost += rec.outcome.cost;
    EXPECT_DOUBLE_EQ(r.total_cost, cost);
}

TEST(SuccessiveHalving, SingleConfiguration) {
    SyntheticBackend b(instances::close_race(2, 3).first(1));
    const auto r = successive_halving(b, {});
    EXPECT_EQ(r.selected, 1u);
    EXPECT_TRUE(r.trace.rounds.empty());
}

TEST(SuccessiveHalving, RejectsBadParameters) {
    SyntheticBackend b(instances::close_race(2, 3, 5000, 5000));
    HalvingParams hp;
    hp.growth = 1.0;
    EXPECT_THROW(successive_halving(b, hp), std::invalid_argument);
    hp = {};
    hp.initial_train_size = 6000;
    EXPECT_THROW(successive_halving(b, hp), std::invalid_argument);
}

TEST(RelativeLoss, Examples) {
    EXPECT_NEAR(relative_accuracy_loss(0.80, 0.72), 0.1, 1e-12);
    EXPECT_EQ(relative_accuracy_loss(0.9, 0.9), 0.0);
    EXPECT_NEAR(relative_accuracy_loss(0.9066, 0.8994), 0.0079418, 1e-7);
    EXPECT_THROW(relative_accuracy_loss(0.0, 0.5), std::invalid_argument);
}

// The plateau configuration looks bad at small sizes, so halving drops it, while
// the engine keeps it alive through its optimistic upper bound.
TEST(Adversarial, HalvingDropsTheBestAndTheEngineKeepsIt) {
    std::size_t halving_wrong = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        SyntheticBackend b(instances::adversarial_plateau(s, 8));
        const auto best = argmax_id(full_run(b).accuracies);
        HalvingParams hp;
        hp.seed = s;
        if (successive_halving(b, hp).selected != best) ++halving_wrong;
        RunParams p;
        p.seed = s;
        const auto res = run_abc(b, bind_params(p, b), SchedulerKind::RoundRobin);
        EXPECT_EQ(res.selected, best) << "seed " << s;
    }
    EXPECT_GE(halving_wrong, 5u);
}
