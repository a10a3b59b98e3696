#include <sstream>

#include <gtest/gtest.h>

#include "abc/core.hpp"

using namespace abc;

TEST(ClampInterval, ClampsAtZero) {
    const auto ci = clamp_interval(-0.2, 0.9);
    EXPECT_EQ(ci.lower, 0.0);
    EXPECT_EQ(ci.upper, 0.9);
}

TEST(ClampInterval, ClampsAtOne) {
    const auto ci = clamp_interval(0.3, 1.4);
    EXPECT_EQ(ci.lower, 0.3);
    EXPECT_EQ(ci.upper, 1.0);
}

TEST(ClampInterval, PointIsUnchanged) {
    EXPECT_EQ(clamp_interval(0.5, 0.5), (ConfidenceInterval{0.5, 0.5}));
}

TEST(ClampInterval, InvertedCollapsesToClippedMidpoint) {
    EXPECT_EQ(clamp_interval(0.8, 0.6), (ConfidenceInterval{0.7, 0.7}));
    EXPECT_EQ(clamp_interval(1.5, 1.2), (ConfidenceInterval{1.0, 1.0}));
    EXPECT_EQ(clamp_interval(-0.1, -0.3), (ConfidenceInterval{0.0, 0.0}));
}

TEST(RunParams, DefaultsNeedCaps) {
    RunParams p;
    EXPECT_THROW(p.validate(), std::invalid_argument);  // initial sizes exceed caps of 1
    p.max_train_size = 10'000;
    p.max_test_size = 10'000;
    EXPECT_NO_THROW(p.validate());
}

TEST(RunParams, RejectsOutOfRange) {
    RunParams p;
    p.max_train_size = p.max_test_size = 100'000;
    auto bad = [&](auto mutate) {
        RunParams q = p;
        mutate(q);
        EXPECT_THROW(q.validate(), std::invalid_argument);
    };
    bad([](RunParams& q) { q.epsilon = -0.1; });
    bad([](RunParams& q) { q.epsilon = 1.1; });
    bad([](RunParams& q) { q.delta = 0.0; });
    bad([](RunParams& q) { q.delta = 1.0; });
    bad([](RunParams& q) { q.n_configs = 0; });
    bad([](RunParams& q) { q.step_factor_c = 1.0; });
    bad([](RunParams& q) { q.alpha_cost_exponent = 0.0; });
    bad([](RunParams& q) { q.initial_train_size = 200'000; });
}

TEST(RunParams, JsonRoundTrip) {
    RunParams p;
    p.epsilon = 0.03;
    p.n_configs = 7;
    p.max_train_size = 123456;
    p.max_test_size = 6543;
    p.seed = 0xfeedfacecafebeefULL;
    const auto q = run_params_from_json(to_json(p));
    EXPECT_EQ(to_json(q), to_json(p));
}

TEST(ProbeOutcome, Validation) {
    ProbeOutcome o;
    EXPECT_NO_THROW(o.validate());
    o.test_accuracy = 1.2;
    EXPECT_THROW(o.validate(), std::invalid_argument);
    o.test_accuracy = 0.5;
    o.cost = -1.0;
    EXPECT_THROW(o.validate(), std::invalid_argument);
}

TEST(TraceJsonl, FieldOrderIsFixed) {
    RoundRecord r;
    r.round = 3;
    r.config_id = 2;
    r.outcome = {1000, 2000, 0.9, 0.85, 12.5, false};
    r.ci = {0.8, 0.95};
    r.incumbent_id = 2;
    r.pruned_ids = {1, 4};
    r.snapshot = true;
    const auto line = to_json(r).dump();
    EXPECT_EQ(line,
              "{\"round\":3,\"config_id\":2,\"s_tr\":1000,\"s_te\":2000,\"acc_train\":0.9,\"acc_test\":0.85,"
              "\"cost\":12.5,\"lower\":0.8,\"upper\":0.95,\"incumbent\":2,\"pruned\":[1,4],\"snapshot\":true}");
}

TEST(TraceJsonl, RoundTripIsExact) {
    RunTrace t;
    for (std::size_t k = 1; k <= 3; ++k) {
        RoundRecord r;
        r.round = k;
        r.config_id = k;
        r.outcome = {static_cast<std::int64_t>(1000 * k), 2000, 0.1 * k, 1.0 / 3.0, 0.7 * k, false};
        r.ci = {1.0 / 7.0, 2.0 / 3.0};
        r.incumbent_id = 1;
        if (k == 3) {
            r.pruned_ids = {2};
            r.snapshot = true;
        }
        t.rounds.push_back(r);
    }
    std::stringstream ss;
    write_jsonl(ss, t);
    const auto back = read_jsonl(ss);
    ASSERT_EQ(back.rounds.size(), 3u);
    std::stringstream again;
    write_jsonl(again, back);
    std::stringstream first;
    write_jsonl(first, t);
    EXPECT_EQ(first.str(), again.str());
    EXPECT_EQ(back.rounds[0].ci.lower, 1.0 / 7.0);
    EXPECT_EQ(back.snapshot_count(), 1u);
}

TEST(TraceJsonl, MalformedLineNamesTheLine) {
    std::stringstream ss("{\"round\":1}\n");
    try {
        read_jsonl(ss);
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("trace line 1"), std::string::npos);
    }
}
