#include <gtest/gtest.h>

#include "abc/config.hpp"
#include "abc/harness.hpp"

using namespace abc;

namespace {

std::string error_of(const json& j, const std::string& base = "") {
    try {
        cli_config_from_json(j, base);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Config, UnknownKeysNameTheirPath) {
    const json base = json::parse(R"({"backend": {"type": "synthetic", "path": "x.json"}})");
    auto j = base;
    j["params"] = {{"epsilon", 0.1}, {"delat", 0.2}};
    EXPECT_EQ(error_of(j).rfind("params.delat: unknown key", 0), 0u) << error_of(j);
    j = base;
    j["output"] = {{"trace", "t"}, {"log", "l"}};
    EXPECT_EQ(error_of(j).rfind("output.log", 0), 0u);
    j = base;
    j["backend"]["rows"] = 5;
    EXPECT_EQ(error_of(j).rfind("backend.rows", 0), 0u);
    EXPECT_EQ(error_of(json::object()).rfind("backend", 0), 0u);
    j = base;
    j["method"] = "grid";
    EXPECT_EQ(error_of(j).rfind("method:", 0), 0u);
    j = base;
    j["params"] = {{"epsilon", "small"}};
    EXPECT_EQ(error_of(j).rfind("params.epsilon", 0), 0u);
}

TEST(Config, RelativePathsFollowTheConfigFile) {
    const json j = json::parse(R"({"backend": {"type": "synthetic", "path": "../instances/a.json"},
                                   "output": {"trace": "out/t.jsonl", "report": "/abs/r.json"}})");
    const auto c = cli_config_from_json(j, "/data/configs");
    EXPECT_EQ(c.backend.path, "/data/instances/a.json");
    EXPECT_EQ(c.trace_path, "/data/configs/out/t.jsonl");
    EXPECT_EQ(c.report_path, "/abs/r.json");
}

TEST(Config, CostExponentSetsStepFactor) {
    const auto p = params_from_json(json{{"alpha_cost_exponent", 2.0}}, "params");
    EXPECT_NEAR(p.step_factor_c, std::sqrt(2.0), 1e-12);
    const auto q = params_from_json(json{{"alpha_cost_exponent", 2.0}, {"step_factor_c", 3.0}}, "params");
    EXPECT_EQ(q.step_factor_c, 3.0);
    EXPECT_EQ(params_from_json(json::object(), "params").step_factor_c, 2.0);
}

TEST(Config, CsvSourceParsing) {
    const json j = json::parse(R"({"type": "csv", "path": "d.csv", "header": true, "holdout": 0.25,
        "learners": [{"kind": "decision_stump"}, {"label": "lr", "kind": "logistic_regression_sgd",
                      "epochs": 3, "cost_model": {"kappa": 2, "alpha": 1.5}}]})");
    const auto s = instance_source_from_json(j, "backend", "/d");
    EXPECT_EQ(s.path, "/d/d.csv");
    EXPECT_EQ(s.learners.size(), 2u);
    EXPECT_EQ(s.learners[1].cost_model->alpha, 1.5);
    auto bad = j;
    bad["learners"][1]["epochs"] = 0;
    try {
        instance_source_from_json(bad, "backend", "");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("backend.learners[1]", 0), 0u) << e.what();
    }
    bad = j;
    bad["holdout"] = 1.0;
    EXPECT_THROW(instance_source_from_json(bad, "backend", ""), ConfigError);
    bad = j;
    bad["type"] = "parquet";
    EXPECT_THROW(instance_source_from_json(bad, "backend", ""), ConfigError);
}

TEST(Config, MissingDataIsABackendError) {
    const json j = json::parse(R"({"backend": {"type": "synthetic", "path": "no/such/file.json"}})");
    EXPECT_THROW(execute_run(cli_config_from_json(j, ABC_SCRATCH_DIR)), BackendError);
    const json k = json::parse(R"({"backend": {"type": "csv", "path": "none.csv",
                                   "learners": [{"kind": "majority_class"}]}})");
    EXPECT_THROW(execute_run(cli_config_from_json(k, ABC_SCRATCH_DIR)), BackendError);
    EXPECT_THROW(load_cli_config(std::string(ABC_SCRATCH_DIR) + "/absent.json"), BackendError);
}

TEST(Config, InvalidParamsAreConfigErrors) {
    json j = json::parse(R"({"backend": {"type": "family", "family": "close_race", "n": 3},
                             "params": {"epsilon": 2.0}})");
    EXPECT_THROW(execute_run(cli_config_from_json(j)), ConfigError);
    j["params"] = {{"initial_train_size", 10'000'000}};
    EXPECT_THROW(execute_run(cli_config_from_json(j)), ConfigError);
    j["params"] = json::object();
    j["method"] = "successive_halving";
    j["halving"] = {{"initial_train_size", 10'000'000}};
    EXPECT_THROW(execute_run(cli_config_from_json(j)), ConfigError);
}

TEST(Config, ShippedConfigsParse) {
    for (auto name : {"synthetic_run.json", "budget_run.json", "csv_run.json"}) {
        const auto c = load_cli_config(std::string(ABC_DATA_DIR) + "/configs/" + name);
        EXPECT_FALSE(c.backend.path.empty()) << name;
    }
    for (auto name : {"paper_suite.json", "epsilon_sweep.json", "scheduler_comparison.json", "budget_sweep.json"})
        EXPECT_NO_THROW(load_experiment_spec(std::string(ABC_DATA_DIR) + "/experiments/" + name)) << name;
}

TEST(Config, RunOutcomeForEachMethod) {
    json j = json::parse(R"({"backend": {"type": "family", "family": "close_race", "seed": 3, "n": 4},
                             "params": {"seed": 2}})");
    const auto abc_run = execute_run(cli_config_from_json(j));
    EXPECT_EQ(abc_run.report.method, Method::Abc);
    EXPECT_FALSE(abc_run.trace.rounds.empty());
    j["method"] = "full_run";
    const auto fr = execute_run(cli_config_from_json(j));
    EXPECT_TRUE(fr.trace.rounds.empty());
    EXPECT_EQ(fr.report.accuracies.size(), 4u);
    j["method"] = "successive_halving";
    EXPECT_EQ(execute_run(cli_config_from_json(j)).report.survivor_counts.front(), 4u);
}
