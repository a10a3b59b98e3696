// abc: command-line front end.
//
//   abc run --config run.json [--method ...] [--scheduler ...] [--seed N] ...
//   abc experiment --spec suite.json [--workers N] [--output DIR]
//   abc audit --trace trace.jsonl [--report report.json] [--instance inst.json | --structural-only]
//   abc report report.json | metrics.jsonl
//
// Exit codes: 0 ok, 1 invalid config or arguments, 2 backend or data error,
// 3 audit found invariant violations.
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "abc/abc.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalidConfig = 1;
constexpr int kBackendError = 2;
constexpr int kAuditViolation = 3;

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("ABC_SEED");
    if (!s || !*s) return std::nullopt;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw abc::ConfigError(std::string("ABC_SEED: not an unsigned integer: '") + s + "'");
    }
}

struct RunArgs {
    std::string config;
    std::string instance;
    std::string method;
    std::string scheduler;
    std::optional<std::uint64_t> seed;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> budget;
    std::string trace;
    std::string report;
    bool no_evaluate{false};
};

int cmd_run(const RunArgs& a) {
    abc::CliConfigFile c;
    if (!a.config.empty()) {
        c = abc::load_cli_config(a.config);
    } else if (!a.instance.empty()) {
        c.backend.kind = abc::InstanceSource::Kind::SyntheticFile;
        c.backend.path = a.instance;
    } else {
        throw abc::ConfigError("run: pass --config or --instance");
    }
    if (!a.method.empty()) c.method = abc::parse_method(a.method);
    if (!a.scheduler.empty()) c.scheduler = abc::parse_scheduler(a.scheduler);
    // Seed precedence: flag, then ABC_SEED, then the config file.
    if (a.seed) c.params.seed = *a.seed;
    else if (const auto s = env_seed()) c.params.seed = *s;
    if (a.epsilon) c.params.epsilon = *a.epsilon;
    if (a.delta) c.params.delta = *a.delta;
    if (a.budget) c.budget = *a.budget;
    if (!a.trace.empty()) c.trace_path = a.trace;
    if (!a.report.empty()) c.report_path = a.report;

    abc::ReportOptions opts;
    opts.evaluate_selected = !a.no_evaluate;
    const auto out = abc::execute_run(c, opts);

    std::cout << abc::format_report(out.report);
    if (!out.trace.rounds.empty()) {
        for (auto it = out.trace.rounds.rbegin(); it != out.trace.rounds.rend(); ++it) {
            if (it->config_id != out.report.selected) continue;
            std::cout << std::fixed << std::setprecision(5) << "bounds of selected: [" << it->ci.lower << ", "
                      << it->ci.upper << "] at s_tr=" << it->outcome.train_sample_size
                      << ", s_te=" << it->outcome.test_sample_size << '\n';
            break;
        }
    }
    if (!c.trace_path.empty()) {
        std::ostringstream os;
        abc::write_jsonl(os, out.trace);
        abc::write_text_file(c.trace_path, os.str());
        std::cout << "trace: " << c.trace_path << '\n';
    }
    if (!c.report_path.empty()) {
        abc::write_text_file(c.report_path, abc::to_json(out.report).dump(2) + "\n");
        std::cout << "report: " << c.report_path << '\n';
    }
    return kOk;
}

struct ExperimentArgs {
    std::string spec;
    std::string output;
    std::size_t workers{0};
    std::optional<std::uint64_t> seed;
};

int cmd_experiment(const ExperimentArgs& a) {
    auto spec = abc::load_experiment_spec(a.spec);
    if (a.seed) spec.seed = *a.seed;
    else if (const auto s = env_seed()) spec.seed = *s;
    if (!a.output.empty()) spec.output_dir = a.output;
    if (spec.output_dir.empty()) throw abc::ConfigError("output_dir: not set (use the spec key or --output)");

    abc::ExperimentOptions opts;
    if (a.workers > 0) opts.workers = a.workers;
    const auto res = abc::run_experiment(spec, opts);
    abc::write_experiment_outputs(res, spec.output_dir);

    std::cout << "experiment '" << spec.name << "': " << res.rows.size() << " cells, " << abc::failed_rows(res)
              << " failed\n";
    std::cout << std::left << std::setw(22) << "method" << std::setw(34) << "instance" << std::setw(8) << "eps"
              << std::setw(10) << "budget" << std::setw(14) << "speedup(i)" << std::setw(12) << "loss" << "delta_rel\n";
    for (const auto& g : abc::aggregate(res.rows)) {
        std::ostringstream budget;
        if (g.budget) budget << std::setprecision(3) << *g.budget;
        else budget << "-";
        std::cout << std::left << std::setw(22) << g.method << std::setw(34) << g.instance << std::setw(8)
                  << g.epsilon << std::setw(10) << budget.str() << std::setw(14) << std::setprecision(4) << g.speedup_i_mean << std::setw(12)
                  << g.loss_mean << g.delta_rel_mean << '\n';
    }
    std::cout << "outputs: " << spec.output_dir << '\n';
    for (const auto& r : res.rows)
        if (!r.ok) std::cerr << "failed cell " << r.method << " / " << r.instance << " rep " << r.rep << ": " << r.error << '\n';
    return res.rows.size() > 0 && abc::failed_rows(res) == res.rows.size() ? kBackendError : kOk;
}

struct AuditArgs {
    std::string trace;
    std::string report;
    std::string instance;
    bool structural_only{false};
    std::optional<double> delta;
};

int cmd_audit(const AuditArgs& a) {
    std::ifstream in(a.trace);
    if (!in) throw abc::BackendError("cannot open trace '" + a.trace + "'");
    abc::RunTrace trace;
    try {
        trace = abc::read_jsonl(in);
    } catch (const std::exception& e) {
        throw abc::ConfigError(a.trace + ": " + e.what());
    }

    std::optional<abc::RunParams> params;
    if (!a.report.empty()) {
        const auto rep = abc::run_report_from_json(abc::cfg::load_json_file(a.report));
        if (rep.method != abc::Method::Abc)
            throw abc::ConfigError("audit: report '" + a.report + "' is not from an abc run");
        params = rep.params;
    }
    std::optional<abc::SyntheticInstance> inst;
    if (!a.instance.empty()) inst = abc::load_synthetic_instance(a.instance);
    if (!a.structural_only && !inst)
        throw abc::ConfigError("audit: containment needs ground truth; pass --instance or --structural-only");

    std::optional<std::size_t> n;
    if (inst) n = inst->configs.size();
    const auto rep = abc::audit_trace(trace, params, n);
    std::cout << "rounds: " << trace.rounds.size() << ", snapshots: " << trace.snapshot_count() << '\n';
    std::cout << abc::format_audit(rep);

    if (inst && !a.structural_only) {
        std::vector<double> gt;
        for (abc::ConfigId id = 1; id <= inst->configs.size(); ++id) gt.push_back(inst->real_accuracy(id));
        const double delta = a.delta.value_or(params ? params->delta : 0.5);
        const auto c = abc::containment_audit({trace}, gt, delta);
        std::cout << std::setprecision(4) << "containment: " << c.violations << " of " << c.probes
                  << " intervals missed the real accuracy (rate " << c.rate << ", nominal " << c.nominal << ")"
                  << (c.flagged ? "  FLAGGED" : "") << '\n';
        for (const auto& row : c.per_config)
            if (row.probes)
                std::cout << "  configuration " << row.id << ": " << row.violations << "/" << row.probes
                          << (row.flagged ? "  FLAGGED" : "") << '\n';
    }
    return rep.ok() ? kOk : kAuditViolation;
}

int cmd_report(const std::string& path) {
    if (path.size() > 6 && path.substr(path.size() - 6) == ".jsonl") {
        std::ifstream in(path);
        if (!in) throw abc::BackendError("cannot open '" + path + "'");
        std::vector<abc::MetricsRow> rows;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) rows.push_back(abc::metrics_row_from_json(abc::json::parse(line)));
        std::cout << abc::kAggregateHeader << '\n';
        for (const auto& g : abc::aggregate(rows)) std::cout << abc::aggregate_csv_line(g) << '\n';
        return kOk;
    }
    std::cout << abc::format_report(abc::run_report_from_json(abc::cfg::load_json_file(path)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate best configuration selection"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Select a configuration on one dataset or synthetic instance");
    run_cmd->add_option("-c,--config", run.config, "Run config (JSON)");
    run_cmd->add_option("--instance", run.instance, "Synthetic instance file, instead of a config");
    run_cmd->add_option("--method", run.method, "abc | full_run | successive_halving");
    run_cmd->add_option("--scheduler", run.scheduler, "gradient_ci | ucb | round_robin");
    run_cmd->add_option("--seed", run.seed, "Run seed (overrides ABC_SEED and the config)");
    run_cmd->add_option("--epsilon", run.epsilon, "Accuracy loss tolerance");
    run_cmd->add_option("--delta", run.delta, "Failure probability");
    run_cmd->add_option("--budget", run.budget, "Cost budget; stop early and return the anytime best guess");
    run_cmd->add_option("--trace", run.trace, "Write the trace (JSONL) here");
    run_cmd->add_option("--report", run.report, "Write the report (JSON) here");
    run_cmd->add_flag("--no-evaluate", run.no_evaluate, "Skip the final full-data training of the selection");

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment suite");
    exp_cmd->add_option("-s,--spec", exp.spec, "Experiment spec (JSON)")->required();
    exp_cmd->add_option("-o,--output", exp.output, "Output directory (overrides the spec)");
    exp_cmd->add_option("-w,--workers", exp.workers, "Worker threads (default: logical cores)");
    exp_cmd->add_option("--seed", exp.seed, "Base seed (overrides ABC_SEED and the spec)");

    AuditArgs aud;
    auto* aud_cmd = app.add_subcommand("audit", "Check a trace's structural invariants and interval containment");
    aud_cmd->add_option("-t,--trace", aud.trace, "Trace (JSONL)")->required();
    aud_cmd->add_option("-r,--report", aud.report, "Report of the same run; enables replay and prune checks");
    aud_cmd->add_option("-i,--instance", aud.instance, "Synthetic instance with the ground truth");
    aud_cmd->add_flag("--structural-only", aud.structural_only, "Skip the containment audit");
    aud_cmd->add_option("--delta", aud.delta, "Failure probability for the containment threshold");

    std::string report_path;
    auto* rep_cmd = app.add_subcommand("report", "Print a run report or aggregate a metrics.jsonl");
    rep_cmd->add_option("path", report_path, "report.json or metrics.jsonl")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalidConfig;
    }

    try {
        if (*run_cmd) return cmd_run(run);
        if (*exp_cmd) return cmd_experiment(exp);
        if (*aud_cmd) return cmd_audit(aud);
        if (*rep_cmd) return cmd_report(report_path);
    } catch (const abc::BackendError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBackendError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const abc::json::exception& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBackendError;
    }
    return kInvalidConfig;
}
