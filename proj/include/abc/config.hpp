// config.hpp
//
// A single-run description read from JSON:
//
//   {
//     "backend":   {"type": "synthetic", "path": "instances/plateau.json"},
//     "method":    "abc",                      // abc | full_run | successive_halving
//     "scheduler": "gradient_ci",              // gradient_ci | ucb | round_robin
//     "params":    {"epsilon": 0.01, "delta": 0.5, "seed": 7},
//     "halving":   {"initial_train_size": 1000, "initial_test_size": 2000},
//     "budget":    2.5e6,
//     "output":    {"trace": "out/trace.jsonl", "report": "out/report.json"}
//   }
//
// Everything but "backend" is optional. Unknown keys are rejected.
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "abc/baselines.hpp"
#include "abc/engine.hpp"
#include "abc/report.hpp"
#include "abc/sources.hpp"

namespace abc {

struct CliConfigFile {
    InstanceSource backend;
    Method method{Method::Abc};
    SchedulerKind scheduler{SchedulerKind::GradientCI};
    RunParams params;
    HalvingParams halving;
    std::optional<double> budget;
    std::string trace_path;
    std::string report_path;
};

inline CliConfigFile cli_config_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
    cfg::check_keys(j, {"backend", "method", "scheduler", "params", "halving", "budget", "output"}, "");
    CliConfigFile c;
    if (!j.contains("backend")) throw ConfigError("backend: required key missing");
    c.backend = instance_source_from_json(j["backend"], "backend", base_dir);
    try {
        if (j.contains("method")) c.method = parse_method(cfg::get<std::string>(j, "method", ""));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("method: ") + e.what());
    }
    try {
        if (j.contains("scheduler")) c.scheduler = parse_scheduler(cfg::get<std::string>(j, "scheduler", ""));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scheduler: ") + e.what());
    }
    if (j.contains("params")) c.params = params_from_json(j["params"], "params");
    if (j.contains("halving")) {
        const auto& h = j["halving"];
        cfg::check_keys(h, {"initial_train_size", "initial_test_size", "growth"}, "halving");
        c.halving.initial_train_size = cfg::get_or(h, "initial_train_size", c.halving.initial_train_size, "halving");
        c.halving.initial_test_size = cfg::get_or(h, "initial_test_size", c.halving.initial_test_size, "halving");
        c.halving.growth = cfg::get_or(h, "growth", c.halving.growth, "halving");
    }
    if (j.contains("budget") && !j["budget"].is_null()) {
        c.budget = cfg::get<double>(j, "budget", "");
        if (!(*c.budget > 0.0)) throw ConfigError("budget: must be > 0");
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        cfg::check_keys(o, {"trace", "report"}, "output");
        if (o.contains("trace")) c.trace_path = cfg::resolve(cfg::get<std::string>(o, "trace", "output"), base_dir);
        if (o.contains("report")) c.report_path = cfg::resolve(cfg::get<std::string>(o, "report", "output"), base_dir);
    }
    return c;
}

inline CliConfigFile load_cli_config(const std::string& path) {
    return cli_config_from_json(cfg::load_json_file(path), std::filesystem::path(path).parent_path());
}

struct RunOutcome {
    RunReport report;
    RunTrace trace;  // empty for full_run
    RunParams params;
};

/// Performs the run a config describes. Parameter problems surface as
/// ConfigError; data and training problems as BackendError.
inline RunOutcome execute_run(const CliConfigFile& c, const ReportOptions& opts = {}) {
    const auto built = build_instance(c.backend);
    const auto& backend = *built.backend;
    RunOutcome out;
    out.params = bind_params(c.params, backend);
    try {
        out.params.validate();
        c.halving.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    switch (c.method) {
        case Method::Abc: {
            const auto res = c.budget ? select_with_budget(backend, out.params, c.scheduler, *c.budget)
                                      : run_abc(backend, out.params, c.scheduler);
            out.report = make_abc_report(res, backend, out.params, c.scheduler, c.budget, opts);
            out.trace = res.trace;
            break;
        }
        case Method::FullRun: {
            out.report = make_full_run_report(full_run(backend, out.params.seed), backend);
            break;
        }
        case Method::SuccessiveHalving: {
            auto hp = c.halving;
            hp.seed = out.params.seed;
            if (hp.initial_train_size > backend.train_size() || hp.initial_test_size > backend.test_size())
                throw ConfigError("halving: initial sizes exceed the data");
            const auto hr = successive_halving(backend, hp);
            out.report = make_halving_report(hr, backend, hp.seed, opts);
            out.trace = hr.trace;
            break;
        }
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    const auto parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream f(path);
    if (!f) throw BackendError("cannot write '" + path + "'");
    f << content;
}

}  // namespace abc
