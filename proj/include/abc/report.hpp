// report.hpp
//
// Final per-run report: what was selected, what it cost, and how good it is
// when the real accuracy can be measured or is known.
#pragma once

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "abc/backend.hpp"
#include "abc/baselines.hpp"
#include "abc/core.hpp"
#include "abc/engine.hpp"
#include "abc/scheduler.hpp"

namespace abc {

enum class Method { Abc, FullRun, SuccessiveHalving };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::Abc: return "abc";
        case Method::FullRun: return "full_run";
        case Method::SuccessiveHalving: return "successive_halving";
    }
    return "?";
}

inline Method parse_method(std::string_view s) {
    if (s == "abc") return Method::Abc;
    if (s == "full_run") return Method::FullRun;
    if (s == "successive_halving") return Method::SuccessiveHalving;
    throw std::invalid_argument("unknown method '" + std::string(s) +
                                "' (expected abc, full_run or successive_halving)");
}

struct PruneEvent {
    std::size_t round{0};
    std::vector<ConfigId> ids;
};

/// Which trained model the user should keep.
struct Deliverable {
    std::string model{"full"};  // "full" or "sampled"
    std::int64_t train_size{0};
    double test_accuracy{0.0};
};

struct RunReport {
    Method method{Method::Abc};
    std::optional<SchedulerKind> scheduler;
    ConfigId selected{1};
    std::string label;
    std::optional<double> real_accuracy;
    double cost_scenario_i{0.0};
    std::optional<double> cost_scenario_ii;
    std::size_t rounds{0};
    std::vector<PruneEvent> prunes;
    std::optional<RunParams> params;
    std::optional<RunFlags> flags;
    std::vector<double> accuracies;    // full-run table, index id - 1
    std::vector<double> ground_truth;  // known real accuracies (simulator only)
    std::optional<Deliverable> deliverable;
    bool exploitativeness_violation{false};
    std::optional<double> budget;
    std::vector<std::size_t> survivor_counts;  // successive halving only
};

inline std::vector<PruneEvent> prune_events(const RunTrace& trace) {
    std::vector<PruneEvent> out;
    for (const auto& r : trace.rounds)
        if (!r.pruned_ids.empty()) out.push_back({r.round, r.pruned_ids});
    return out;
}

inline std::vector<double> known_ground_truth(const ProbeBackend& backend) {
    std::vector<double> gt;
    for (ConfigId id = 1; id <= backend.size(); ++id) {
        const auto a = backend.ground_truth(id);
        if (!a) return {};
        gt.push_back(*a);
    }
    return gt;
}

struct ReportOptions {
    // Train the selected configuration on all data to measure its real accuracy
    // and the scenario (ii) cost. Free for the simulator, one full training otherwise.
    bool evaluate_selected{true};
};

/// Scenario (ii) and the exploitativeness fallback: if the model trained on
/// all data tests worse than the last sampled model of the same configuration,
/// the sampled model is the deliverable.
inline void finish_report(RunReport& rep, const ProbeBackend& backend, const std::vector<ProbeOutcome>& selected_history,
                          std::uint64_t seed, const ReportOptions& opts) {
    rep.label = backend.label(rep.selected);
    rep.ground_truth = known_ground_truth(backend);
    if (!opts.evaluate_selected) {
        if (!rep.ground_truth.empty()) rep.real_accuracy = rep.ground_truth[rep.selected - 1];
        return;
    }
    const auto ev = backend.full_evaluate(rep.selected, full_evaluation_seed(seed, rep.selected));
    rep.real_accuracy = ev.accuracy;
    rep.cost_scenario_ii = rep.cost_scenario_i + ev.cost;
    Deliverable d{"full", backend.train_size(), ev.accuracy};
    if (!selected_history.empty()) {
        const auto& last = selected_history.back();
        if (last.train_sample_size < backend.train_size() && last.test_accuracy > ev.accuracy) {
            rep.exploitativeness_violation = true;
            d = {"sampled", last.train_sample_size, last.test_accuracy};
        }
    }
    rep.deliverable = d;
}

inline RunReport make_abc_report(const RunResult& res, const ProbeBackend& backend, const RunParams& params,
                                 SchedulerKind scheduler, std::optional<double> budget = std::nullopt,
                                 const ReportOptions& opts = {}) {
    RunReport rep;
    rep.method = Method::Abc;
    rep.scheduler = scheduler;
    rep.selected = res.selected;
    rep.cost_scenario_i = res.trace.wall_cost_total;
    rep.rounds = res.trace.rounds.size();
    rep.prunes = prune_events(res.trace);
    rep.params = params;
    rep.flags = res.flags;
    rep.budget = budget;
    const auto& hist = res.configs.at(res.selected - 1).history;
    finish_report(rep, backend, hist, params.seed, opts);
    return rep;
}

inline RunReport make_full_run_report(const FullRunResult& fr, const ProbeBackend& backend) {
    RunReport rep;
    rep.method = Method::FullRun;
    rep.selected = fr.best;
    rep.label = backend.label(fr.best);
    rep.real_accuracy = fr.accuracies[fr.best - 1];
    rep.cost_scenario_i = fr.total_cost;
    rep.cost_scenario_ii = fr.total_cost;
    rep.accuracies = fr.accuracies;
    rep.ground_truth = known_ground_truth(backend);
    rep.deliverable = Deliverable{"full", backend.train_size(), fr.accuracies[fr.best - 1]};
    return rep;
}

inline RunReport make_halving_report(const HalvingResult& hr, const ProbeBackend& backend, std::uint64_t seed,
                                     const ReportOptions& opts = {}) {
    RunReport rep;
    rep.method = Method::SuccessiveHalving;
    rep.selected = hr.selected;
    rep.cost_scenario_i = hr.total_cost;
    rep.rounds = hr.trace.rounds.size();
    rep.prunes = prune_events(hr.trace);
    rep.survivor_counts = hr.survivor_counts;
    std::vector<ProbeOutcome> hist;
    for (const auto& r : hr.trace.rounds)
        if (r.config_id == hr.selected) hist.push_back(r.outcome);
    finish_report(rep, backend, hist, seed, opts);
    return rep;
}

inline json to_json(const RunReport& r) {
    json j;
    j["method"] = to_string(r.method);
    j["scheduler"] = r.scheduler ? json(to_string(*r.scheduler)) : json(nullptr);
    j["selected"] = r.selected;
    j["label"] = r.label;
    j["real_accuracy"] = r.real_accuracy ? json(*r.real_accuracy) : json(nullptr);
    j["total_cost_scenario_i"] = r.cost_scenario_i;
    j["total_cost_scenario_ii"] = r.cost_scenario_ii ? json(*r.cost_scenario_ii) : json(nullptr);
    j["rounds"] = r.rounds;
    json prunes = json::array();
    for (const auto& p : r.prunes) prunes.push_back(json{{"round", p.round}, {"ids", p.ids}});
    j["prunes"] = prunes;
    j["params"] = r.params ? to_json(*r.params) : json(nullptr);
    j["flags"] = r.flags ? to_json(*r.flags) : json(nullptr);
    if (!r.accuracies.empty()) {
        json table = json::array();
        for (std::size_t i = 0; i < r.accuracies.size(); ++i)
            table.push_back(json{{"id", i + 1}, {"accuracy", r.accuracies[i]}});
        j["accuracies"] = table;
    }
    if (!r.ground_truth.empty()) j["ground_truth"] = r.ground_truth;
    if (r.deliverable)
        j["deliverable"] = json{{"model", r.deliverable->model},
                                {"train_size", r.deliverable->train_size},
                                {"test_accuracy", r.deliverable->test_accuracy}};
    j["exploitativeness_violation"] = r.exploitativeness_violation;
    j["budget"] = r.budget ? json(*r.budget) : json(nullptr);
    if (!r.survivor_counts.empty()) j["survivor_counts"] = r.survivor_counts;
    return j;
}

/// Reads back the fields the audit and report commands need.
inline RunReport run_report_from_json(const json& j) {
    RunReport r;
    r.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("scheduler") && !j["scheduler"].is_null())
        r.scheduler = parse_scheduler(j["scheduler"].get<std::string>());
    r.selected = j.at("selected").get<ConfigId>();
    r.label = j.value("label", std::string{});
    if (j.contains("real_accuracy") && !j["real_accuracy"].is_null()) r.real_accuracy = j["real_accuracy"].get<double>();
    r.cost_scenario_i = j.at("total_cost_scenario_i").get<double>();
    if (j.contains("total_cost_scenario_ii") && !j["total_cost_scenario_ii"].is_null())
        r.cost_scenario_ii = j["total_cost_scenario_ii"].get<double>();
    r.rounds = j.value("rounds", std::size_t{0});
    if (j.contains("prunes"))
        for (const auto& p : j["prunes"]) r.prunes.push_back({p.at("round").get<std::size_t>(), p.at("ids").get<std::vector<ConfigId>>()});
    if (j.contains("params") && !j["params"].is_null()) r.params = run_params_from_json(j["params"]);
    if (j.contains("accuracies"))
        for (const auto& row : j["accuracies"]) r.accuracies.push_back(row.at("accuracy").get<double>());
    if (j.contains("ground_truth")) r.ground_truth = j["ground_truth"].get<std::vector<double>>();
    r.exploitativeness_violation = j.value("exploitativeness_violation", false);
    if (j.contains("budget") && !j["budget"].is_null()) r.budget = j["budget"].get<double>();
    return r;
}

inline std::string format_report(const RunReport& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << "method: " << to_string(r.method);
    if (r.scheduler) os << " (" << to_string(*r.scheduler) << ")";
    os << '\n' << "selected: " << r.selected;
    if (!r.label.empty()) os << " [" << r.label << "]";
    os << '\n';
    if (r.real_accuracy) os << "real accuracy: " << *r.real_accuracy << '\n';
    os.precision(6);
    os << "cost (selection only): " << r.cost_scenario_i << '\n';
    if (r.cost_scenario_ii) os << "cost (with final training): " << *r.cost_scenario_ii << '\n';
    if (r.rounds) os << "rounds: " << r.rounds << ", prune events: " << r.prunes.size() << '\n';
    if (r.budget) os << "budget: " << *r.budget << '\n';
    if (r.flags) {
        if (r.flags->budget_exhausted) os << "note: stopped on budget, selection is the anytime best guess\n";
        if (r.flags->empty_trace_warning) os << "warning: budget below the first probe, nothing was probed\n";
        if (r.flags->survivor_diverged) os << "note: last active configuration differs from the incumbent\n";
        if (r.flags->forced_termination) os << "note: round guard hit, remaining configurations evaluated on full data\n";
        if (!r.flags->anomaly_rounds.empty())
            os << "note: " << r.flags->anomaly_rounds.size() << " interval(s) disjoint from the cached one\n";
    }
    if (r.exploitativeness_violation)
        os << "note: the sampled model tests better than the full-data model; deliverable is the sampled model\n";
    if (!r.accuracies.empty()) {
        os.precision(4);
        os << "accuracies:\n";
        for (std::size_t i = 0; i < r.accuracies.size(); ++i)
            os << "  " << (i + 1) << ": " << r.accuracies[i] << (i + 1 == r.selected ? "  *" : "") << '\n';
    }
    return os.str();
}

}  // namespace abc
