#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "abc/scheduler.hpp"

using namespace abc;

TEST(OptimalStepSize, Values) {
    EXPECT_DOUBLE_EQ(optimal_step_size(1.0), 2.0);
    EXPECT_NEAR(optimal_step_size(2.0), 1.414214, 1e-6);
    EXPECT_DOUBLE_EQ(optimal_step_size(0.5), 4.0);
    EXPECT_THROW(optimal_step_size(0.0), std::invalid_argument);
    EXPECT_THROW(optimal_step_size(-1.0), std::invalid_argument);
}

// Worst-case ratio of accumulated to final-probe time for a geometric schedule
// with factor c, T(s) = s^alpha: sum_{j>=0} c^{-j alpha} * c^alpha (the optimum
// can be just above the previous step).
TEST(OptimalStepSize, MinimisesWorstCaseRatio) {
    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        auto ratio = [&](double c) { return std::pow(c, alpha) / (1.0 - std::pow(c, -alpha)); };
        double best_c = 0.0, best = 1e300;
        for (double c = 1.01; c < 10.0; c += 0.0005) {
            if (ratio(c) < best) {
                best = ratio(c);
                best_c = c;
            }
        }
        EXPECT_NEAR(best_c, optimal_step_size(alpha), 0.01 * optimal_step_size(alpha)) << "alpha " << alpha;
        EXPECT_NEAR(ratio(optimal_step_size(alpha)), 4.0, 1e-9);
    }
}

TEST(NextSampleSize, Examples) {
    EXPECT_EQ(next_sample_size(1000, 2.0, 1'000'000'000), 2000);
    EXPECT_EQ(next_sample_size(900'000, 2.0, 1'000'000), 1'000'000);
    EXPECT_EQ(next_sample_size(1'000'000, 2.0, 1'000'000), 1'000'000);
}

TEST(NextSampleSize, MinimumIncrementIsOne) {
    EXPECT_EQ(next_sample_size(1, 1.2, 100), 2);
    EXPECT_EQ(next_sample_size(3, 1.1, 100), 4);
}

TEST(NextSampleSize, MonotoneAndIdempotentAtCap) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> s(1, 100'000);
    std::uniform_real_distribution<double> c(1.01, 5.0);
    for (int k = 0; k < 2000; ++k) {
        const auto a = s(rng), b = s(rng);
        const double f = c(rng);
        const std::int64_t cap = 200'000;
        if (a <= b) {
            EXPECT_LE(next_sample_size(a, f, cap), next_sample_size(b, f, cap));
        }
        EXPECT_GT(next_sample_size(a, f, cap), a);
        EXPECT_EQ(next_sample_size(cap, f, cap), cap);
    }
}

namespace {
Candidate cand(ConfigId id, double lower, double upper, std::size_t probes = 2) { return {id, {lower, upper}, probes}; }
}  // namespace

TEST(GradientCi, PicksTopWhenItsLowerBoundIsCheapToRaise) {
    std::vector<Candidate> a{cand(1, 0.7, 0.95), cand(2, 0.6, 0.9)};
    std::map<ConfigId, GradientEstimate> g{{1, {1.0, 0.02, -0.01}}, {2, {1.0, 0.0, -0.01}}};
    EXPECT_EQ(gradient_ci_pick(a, g), 1u);  // 50 <= 100
}

TEST(GradientCi, PicksRunnerUpOtherwise) {
    std::vector<Candidate> a{cand(1, 0.7, 0.95), cand(2, 0.6, 0.9)};
    std::map<ConfigId, GradientEstimate> g{{1, {1.0, 0.001, -0.01}}, {2, {1.0, 0.0, -0.01}}};
    EXPECT_EQ(gradient_ci_pick(a, g), 2u);  // 1000 > 100
}

TEST(GradientCi, StalledLowerBoundIsInfinitelyExpensive) {
    std::vector<Candidate> a{cand(1, 0.7, 0.95), cand(2, 0.6, 0.9)};
    std::map<ConfigId, GradientEstimate> g{{1, {1.0, 0.0, -0.01}}, {2, {1.0, 0.0, -0.01}}};
    EXPECT_EQ(gradient_ci_pick(a, g), 2u);
}

TEST(GradientCi, NonShrinkingUpperBoundsContributeNothing) {
    std::vector<Candidate> a{cand(1, 0.7, 0.95), cand(2, 0.6, 0.9), cand(3, 0.5, 0.8)};
    std::map<ConfigId, GradientEstimate> g{{1, {1.0, 0.5, 0.0}}, {2, {1.0, 0.0, 0.0}}, {3, {1.0, 0.0, 0.01}}};
    EXPECT_EQ(gradient_ci_pick(a, g), 2u);  // G = 0 < 2
}

TEST(GradientCi, RanksByUpperBoundWithIdTieBreak) {
    std::vector<Candidate> a{cand(3, 0.5, 0.9), cand(2, 0.5, 0.9), cand(1, 0.5, 0.8)};
    std::map<ConfigId, GradientEstimate> g{{1, {1.0, 0.0, -0.1}}, {2, {1.0, 0.0, -0.1}}, {3, {1.0, 0.0, -0.1}}};
    EXPECT_EQ(gradient_ci_pick(a, g), 3u);  // top is 2 (tie -> lower id), stalled, so runner-up 3
}

TEST(GradientCi, RequiresTwoProbes) {
    std::vector<Candidate> a{cand(1, 0.7, 0.95, 1), cand(2, 0.6, 0.9)};
    std::map<ConfigId, GradientEstimate> g{{2, {1.0, 0.0, -0.01}}};
    EXPECT_THROW(gradient_ci_pick(a, g), std::logic_error);
}

TEST(GradientCi, AlwaysReturnsOneOfTheTopTwo) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0), d(-0.05, 0.05);
    for (int k = 0; k < 1000; ++k) {
        std::vector<Candidate> a;
        std::map<ConfigId, GradientEstimate> g;
        for (ConfigId id = 1; id <= 6; ++id) {
            const double x = u(rng), y = u(rng);
            a.push_back(cand(id, std::min(x, y), std::max(x, y)));
            g[id] = {u(rng), d(rng), d(rng)};
        }
        const auto order = sorted_by_upper(a);
        const auto pick = gradient_ci_pick(a, g);
        EXPECT_TRUE(pick == order[0].id || pick == order[1].id);
    }
}

TEST(Ucb, Examples) {
    std::vector<Candidate> a{cand(1, 0, 0.90), cand(2, 0, 0.95), cand(3, 0, 0.85)};
    EXPECT_EQ(ucb_pick(a), 2u);
    std::vector<Candidate> tie{cand(1, 0, 0.90), cand(2, 0, 0.90)};
    EXPECT_EQ(ucb_pick(tie), 1u);
    std::vector<Candidate> one{cand(4, 0, 0.5)};
    EXPECT_EQ(ucb_pick(one), 4u);
}

TEST(RoundRobin, Examples) {
    std::vector<Candidate> a{cand(1, 0, 1, 3), cand(2, 0, 1, 2), cand(3, 0, 1, 3)};
    EXPECT_EQ(round_robin_pick(a), 2u);
    std::vector<Candidate> tie{cand(1, 0, 1, 2), cand(2, 0, 1, 2)};
    EXPECT_EQ(round_robin_pick(tie), 1u);
    std::vector<Candidate> one{cand(5, 0, 1, 9)};
    EXPECT_EQ(round_robin_pick(one), 5u);
}

TEST(GradientEstimateOf, UsesLastTwoProbes) {
    ConfigurationState c;
    c.history = {{1000, 2000, 0.9, 0.8, 1.0, false}, {2000, 4000, 0.88, 0.82, 2.0, false},
                 {4000, 8000, 0.87, 0.83, 4.0, false}};
    c.bound_history = {{0.7, 0.99}, {0.75, 0.97}, {0.78, 0.95}};
    const auto g = gradient_estimate(c);
    EXPECT_DOUBLE_EQ(g.delta_cost, 2.0);
    EXPECT_NEAR(g.delta_lower, 0.03, 1e-12);
    EXPECT_NEAR(g.delta_upper, -0.02, 1e-12);
    c.history.resize(1);
    c.bound_history.resize(1);
    EXPECT_THROW(gradient_estimate(c), std::logic_error);
}

TEST(SchedulerNames, RoundTrip) {
    for (auto k : {SchedulerKind::GradientCI, SchedulerKind::UCB, SchedulerKind::RoundRobin})
        EXPECT_EQ(parse_scheduler(to_string(k)), k);
    EXPECT_THROW(parse_scheduler("greedy"), std::invalid_argument);
}
