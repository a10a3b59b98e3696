// harness.hpp
//
// Monte Carlo experiment runner. Every (instance, method, epsilon, budget,
// repetition) cell gets its own seed derived from the base seed, runs on a
// worker pool, and lands in a fixed position of the output so results do not
// depend on the number of workers.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "abc/audit.hpp"
#include "abc/baselines.hpp"
#include "abc/engine.hpp"
#include "abc/random.hpp"
#include "abc/report.hpp"
#include "abc/sources.hpp"
#include "abc/stats.hpp"

namespace abc {

enum class ExperimentMethod { AbcGradientCI, AbcUcb, AbcRoundRobin, FullRun, SuccessiveHalving };

inline std::string_view to_string(ExperimentMethod m) {
    switch (m) {
        case ExperimentMethod::AbcGradientCI: return "abc_gradient_ci";
        case ExperimentMethod::AbcUcb: return "abc_ucb";
        case ExperimentMethod::AbcRoundRobin: return "abc_round_robin";
        case ExperimentMethod::FullRun: return "full_run";
        case ExperimentMethod::SuccessiveHalving: return "successive_halving";
    }
    return "?";
}

inline ExperimentMethod parse_experiment_method(std::string_view s) {
    for (auto m : {ExperimentMethod::AbcGradientCI, ExperimentMethod::AbcUcb, ExperimentMethod::AbcRoundRobin,
                   ExperimentMethod::FullRun, ExperimentMethod::SuccessiveHalving})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown method '" + std::string(s) +
                                "' (expected abc_gradient_ci, abc_ucb, abc_round_robin, full_run or successive_halving)");
}

inline std::optional<SchedulerKind> scheduler_of(ExperimentMethod m) {
    switch (m) {
        case ExperimentMethod::AbcGradientCI: return SchedulerKind::GradientCI;
        case ExperimentMethod::AbcUcb: return SchedulerKind::UCB;
        case ExperimentMethod::AbcRoundRobin: return SchedulerKind::RoundRobin;
        default: return std::nullopt;
    }
}

struct ExperimentSpec {
    std::string name{"experiment"};
    std::vector<InstanceSource> instances;
    std::vector<ExperimentMethod> methods;
    std::vector<double> epsilons{0.01};
    std::vector<std::size_t> n_configs;  // empty: use each instance as given
    std::size_t repetitions{1};
    std::uint64_t seed{0};
    RunParams params;  // epsilon, seed and data caps are filled per cell
    HalvingParams halving;
    std::vector<double> budgets;  // ABC methods only; empty means unbudgeted
    std::string output_dir;

    void validate() const {
        if (instances.empty()) throw ConfigError("instances: grid is empty");
        if (methods.empty()) throw ConfigError("methods: grid is empty");
        if (epsilons.empty()) throw ConfigError("epsilons: grid is empty");
        if (repetitions < 1) throw ConfigError("repetitions: must be >= 1");
        for (double e : epsilons)
            if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("epsilons: value " + std::to_string(e) + " outside [0,1]");
        for (auto n : n_configs)
            if (n < 1) throw ConfigError("n_configs: values must be >= 1");
        for (double b : budgets)
            if (!(b > 0.0)) throw ConfigError("budgets: values must be > 0");
        if (!(params.delta > 0.0 && params.delta < 1.0)) throw ConfigError("params.delta: must lie in (0,1)");
        try {
            halving.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("halving: ") + e.what());
        }
    }
};

template <class T>
std::vector<T> json_grid(const json& j, std::string_view key, const std::string& path) {
    const auto where = cfg::join(path, key);
    if (!j.at(key).is_array()) throw ConfigError(where + ": expected a list");
    std::vector<T> out;
    for (std::size_t i = 0; i < j.at(key).size(); ++i) {
        try {
            out.push_back(j.at(key)[i].get<T>());
        } catch (const json::exception& e) {
            throw ConfigError(where + "[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return out;
}

inline ExperimentSpec experiment_spec_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
    cfg::check_keys(j,
                    {"name", "instances", "methods", "epsilons", "n_configs", "repetitions", "seed", "params", "halving",
                     "budgets", "output_dir"},
                    "");
    ExperimentSpec s;
    s.name = cfg::get_or<std::string>(j, "name", s.name, "");
    if (!j.contains("instances") || !j["instances"].is_array()) throw ConfigError("instances: expected a list");
    for (std::size_t i = 0; i < j["instances"].size(); ++i)
        s.instances.push_back(instance_source_from_json(j["instances"][i], "instances[" + std::to_string(i) + "]", base_dir));
    if (!j.contains("methods")) throw ConfigError("methods: required key missing");
    for (const auto& m : json_grid<std::string>(j, "methods", "")) {
        try {
            s.methods.push_back(parse_experiment_method(m));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("methods: ") + e.what());
        }
    }
    if (j.contains("epsilons")) s.epsilons = json_grid<double>(j, "epsilons", "");
    if (j.contains("n_configs")) s.n_configs = json_grid<std::size_t>(j, "n_configs", "");
    s.repetitions = cfg::get_or<std::size_t>(j, "repetitions", s.repetitions, "");
    s.seed = cfg::get_or<std::uint64_t>(j, "seed", s.seed, "");
    if (j.contains("params")) {
        const auto& p = j["params"];
        cfg::require_object(p, "params");
        for (auto key : {"epsilon", "seed"})
            if (p.contains(key))
                throw ConfigError(std::string("params.") + key + ": set at the top level of an experiment spec");
        s.params = params_from_json(p, "params");
    }
    if (j.contains("halving")) {
        const auto& h = j["halving"];
        cfg::check_keys(h, {"initial_train_size", "initial_test_size", "growth"}, "halving");
        s.halving.initial_train_size = cfg::get_or(h, "initial_train_size", s.halving.initial_train_size, "halving");
        s.halving.initial_test_size = cfg::get_or(h, "initial_test_size", s.halving.initial_test_size, "halving");
        s.halving.growth = cfg::get_or(h, "growth", s.halving.growth, "halving");
    }
    if (j.contains("budgets")) s.budgets = json_grid<double>(j, "budgets", "");
    if (j.contains("output_dir")) s.output_dir = cfg::resolve(cfg::get<std::string>(j, "output_dir", ""), base_dir);
    s.validate();
    return s;
}

inline ExperimentSpec load_experiment_spec(const std::string& path) {
    const auto j = cfg::load_json_file(path);
    return experiment_spec_from_json(j, std::filesystem::path(path).parent_path());
}

struct MetricsRow {
    std::string method;
    std::string instance;
    std::size_t n{0};
    std::size_t rep{0};
    std::uint64_t seed{0};
    double epsilon{0.0};
    std::optional<double> budget;
    bool ok{true};
    std::string error;

    ConfigId selected{0};
    double acc_selected{0.0};
    double acc_best{0.0};
    double loss{0.0};
    double delta_rel{0.0};
    double cost_i{0.0};
    double cost_ii{0.0};
    double speedup_i{0.0};
    double speedup_ii{0.0};
    std::size_t rounds{0};
    std::size_t prunes{0};  // configurations pruned

    // Probes and probes whose interval missed the known real accuracy (simulator only).
    std::size_t probes{0};
    std::optional<std::size_t> ci_violations;
    bool survivor_diverged{false};
    bool budget_exhausted{false};
};

inline std::uint64_t cell_seed(std::uint64_t base, std::string_view method, std::string_view instance, double epsilon,
                               std::size_t rep) {
    return derive_seed({base, hash_name(method), hash_name(instance), hash_double(epsilon), rep});
}

/// Runs fn(0..jobs-1) on up to `workers` threads.
inline void parallel_for(std::size_t jobs, std::size_t workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max<std::size_t>(1, std::min(workers, jobs));
    if (workers == 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

struct PreparedInstance {
    BuiltInstance built;
    std::size_t n{0};
    std::optional<FullRunResult> full;
    std::string error;
};

struct ExperimentOptions {
    std::size_t workers{std::max(1u, std::thread::hardware_concurrency())};
};

struct ExperimentResult {
    std::vector<MetricsRow> rows;
    std::vector<PreparedInstance> instances;
};

namespace detail {

inline void fill_quality(MetricsRow& row, const FullRunResult& full) {
    row.acc_best = full.accuracies[full.best - 1];
    row.acc_selected = full.accuracies.at(row.selected - 1);
    row.loss = row.acc_best - row.acc_selected;
    row.delta_rel = relative_accuracy_loss(row.acc_best, row.acc_selected);
    row.cost_ii = row.cost_i + full.costs.at(row.selected - 1);
    row.speedup_i = row.cost_i > 0.0 ? full.total_cost / row.cost_i : std::numeric_limits<double>::infinity();
    row.speedup_ii = full.total_cost / row.cost_ii;
}

inline std::size_t pruned_count(const RunTrace& t) {
    std::size_t k = 0;
    for (const auto& r : t.rounds) k += r.pruned_ids.size();
    return k;
}

inline void count_containment(MetricsRow& row, const RunTrace& t, const ProbeBackend& backend) {
    row.probes = t.rounds.size();
    const auto gt = known_ground_truth(backend);
    if (gt.empty()) return;
    std::size_t miss = 0;
    for (const auto& r : t.rounds)
        if (!r.ci.contains(gt[r.config_id - 1])) ++miss;
    row.ci_violations = miss;
}

}  // namespace detail

inline MetricsRow run_cell(ExperimentMethod method, const PreparedInstance& inst, const ExperimentSpec& spec, double epsilon,
                           std::optional<double> budget, std::size_t rep) {
    MetricsRow row;
    row.method = std::string(to_string(method));
    row.instance = inst.built.id;
    row.n = inst.n;
    row.rep = rep;
    row.epsilon = epsilon;
    row.budget = budget;
    row.seed = cell_seed(spec.seed, row.method, row.instance, epsilon, rep);
    if (!inst.full) {
        row.ok = false;
        row.error = "full run failed: " + inst.error;
        return row;
    }
    const auto& backend = *inst.built.backend;
    const auto& full = *inst.full;
    try {
        if (method == ExperimentMethod::FullRun) {
            row.selected = full.best;
            row.cost_i = full.total_cost;
            detail::fill_quality(row, full);
            row.cost_ii = full.total_cost;
            row.speedup_i = row.speedup_ii = 1.0;
            row.rounds = backend.size();
        } else if (method == ExperimentMethod::SuccessiveHalving) {
            auto hp = spec.halving;
            hp.seed = row.seed;
            const auto hr = successive_halving(backend, hp);
            row.selected = hr.selected;
            row.cost_i = hr.total_cost;
            row.rounds = hr.trace.rounds.size();
            row.prunes = detail::pruned_count(hr.trace);
            row.probes = hr.trace.rounds.size();
            detail::fill_quality(row, full);
        } else {
            auto p = spec.params;
            p.epsilon = epsilon;
            p.seed = row.seed;
            p = bind_params(p, backend);
            const auto kind = *scheduler_of(method);
            const auto res = budget ? select_with_budget(backend, p, kind, *budget) : run_abc(backend, p, kind);
            row.selected = res.selected;
            row.cost_i = res.trace.wall_cost_total;
            row.rounds = res.trace.rounds.size();
            row.prunes = detail::pruned_count(res.trace);
            row.survivor_diverged = res.flags.survivor_diverged;
            row.budget_exhausted = res.flags.budget_exhausted;
            detail::count_containment(row, res.trace, backend);
            detail::fill_quality(row, full);
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

/// Builds every (source, n) instance and computes its Full-run table once;
/// all cells on that instance share it, so full_run rows have speedup 1.
inline std::vector<PreparedInstance> prepare_instances(const ExperimentSpec& spec, std::size_t workers) {
    std::vector<std::pair<const InstanceSource*, std::optional<std::size_t>>> todo;
    for (const auto& src : spec.instances) {
        if (spec.n_configs.empty()) todo.emplace_back(&src, std::nullopt);
        else
            for (auto n : spec.n_configs) todo.emplace_back(&src, n);
    }
    // Build sequentially so every CSV file is parsed once.
    std::map<std::string, std::shared_ptr<const Dataset>> datasets;
    std::vector<PreparedInstance> out(todo.size());
    for (std::size_t i = 0; i < todo.size(); ++i) {
        const auto& [src, n] = todo[i];
        std::shared_ptr<const Dataset> data;
        if (src->kind == InstanceSource::Kind::Csv) {
            auto& d = datasets[src->path + (src->csv.header ? "#h" : "")];
            if (!d) d = std::make_shared<const Dataset>(load_csv(src->path, src->csv));
            data = d;
        }
        out[i].built = build_instance(*src, n, data);
        out[i].n = out[i].built.backend->size();
    }
    parallel_for(out.size(), workers, [&](std::size_t i) {
        try {
            out[i].full = full_run(*out[i].built.backend, spec.seed);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec, const ExperimentOptions& opts = {}) {
    spec.validate();
    ExperimentResult result;
    result.instances = prepare_instances(spec, opts.workers);

    struct Cell {
        std::size_t inst;
        ExperimentMethod method;
        double epsilon;
        std::optional<double> budget;
        std::size_t rep;
    };
    std::vector<Cell> cells;
    for (std::size_t i = 0; i < result.instances.size(); ++i)
        for (auto m : spec.methods)
            for (double e : spec.epsilons) {
                std::vector<std::optional<double>> budgets{std::nullopt};
                if (scheduler_of(m) && !spec.budgets.empty()) budgets.assign(spec.budgets.begin(), spec.budgets.end());
                for (const auto& b : budgets)
                    for (std::size_t r = 0; r < spec.repetitions; ++r) cells.push_back({i, m, e, b, r});
            }
    result.rows.resize(cells.size());
    parallel_for(cells.size(), opts.workers, [&](std::size_t k) {
        const auto& c = cells[k];
        result.rows[k] = run_cell(c.method, result.instances[c.inst], spec, c.epsilon, c.budget, c.rep);
    });
    return result;
}

// ---- output -------------------------------------------------------------

inline const char* kMetricsHeader =
    "method,instance,seed,epsilon,selected,acc_selected,acc_best,loss,delta_rel,cost_i,cost_ii,speedup_i,speedup_ii,"
    "rounds,prunes";

inline std::string fmt_num(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

inline std::string metrics_csv_line(const MetricsRow& r) {
    std::ostringstream os;
    os << r.method << ',' << r.instance << ',' << r.seed << ',' << fmt_num(r.epsilon) << ',';
    if (!r.ok) {
        os << ",,,,,,,,,,";
        return os.str();
    }
    os << r.selected << ',' << fmt_num(r.acc_selected) << ',' << fmt_num(r.acc_best) << ',' << fmt_num(r.loss) << ','
       << fmt_num(r.delta_rel) << ',' << fmt_num(r.cost_i) << ',' << fmt_num(r.cost_ii) << ','
       << fmt_num(r.speedup_i) << ',' << fmt_num(r.speedup_ii) << ',' << r.rounds << ',' << r.prunes;
    return os.str();
}

inline json to_json(const MetricsRow& r) {
    json j{{"method", r.method}, {"instance", r.instance}, {"n", r.n},     {"rep", r.rep},
           {"seed", r.seed},     {"epsilon", r.epsilon},   {"budget", r.budget ? json(*r.budget) : json(nullptr)},
           {"ok", r.ok}};
    if (!r.ok) {
        j["error"] = r.error;
        return j;
    }
    j.update(json{{"selected", r.selected},
                  {"acc_selected", r.acc_selected},
                  {"acc_best", r.acc_best},
                  {"loss", r.loss},
                  {"delta_rel", r.delta_rel},
                  {"cost_i", r.cost_i},
                  {"cost_ii", r.cost_ii},
                  {"speedup_i", r.speedup_i},
                  {"speedup_ii", r.speedup_ii},
                  {"rounds", r.rounds},
                  {"prunes", r.prunes},
                  {"probes", r.probes},
                  {"ci_violations", r.ci_violations ? json(*r.ci_violations) : json(nullptr)},
                  {"survivor_diverged", r.survivor_diverged},
                  {"budget_exhausted", r.budget_exhausted}});
    return j;
}

inline MetricsRow metrics_row_from_json(const json& j) {
    MetricsRow r;
    r.method = j.at("method").get<std::string>();
    r.instance = j.at("instance").get<std::string>();
    r.n = j.value("n", std::size_t{0});
    r.rep = j.value("rep", std::size_t{0});
    r.seed = j.at("seed").get<std::uint64_t>();
    r.epsilon = j.at("epsilon").get<double>();
    if (j.contains("budget") && !j["budget"].is_null()) r.budget = j["budget"].get<double>();
    r.ok = j.at("ok").get<bool>();
    if (!r.ok) {
        r.error = j.value("error", std::string{});
        return r;
    }
    r.selected = j.at("selected").get<ConfigId>();
    r.acc_selected = j.at("acc_selected").get<double>();
    r.acc_best = j.at("acc_best").get<double>();
    r.loss = j.at("loss").get<double>();
    r.delta_rel = j.at("delta_rel").get<double>();
    r.cost_i = j.at("cost_i").get<double>();
    r.cost_ii = j.at("cost_ii").get<double>();
    r.speedup_i = j.at("speedup_i").get<double>();
    r.speedup_ii = j.at("speedup_ii").get<double>();
    r.rounds = j.at("rounds").get<std::size_t>();
    r.prunes = j.at("prunes").get<std::size_t>();
    r.probes = j.value("probes", std::size_t{0});
    if (j.contains("ci_violations") && !j["ci_violations"].is_null()) r.ci_violations = j["ci_violations"].get<std::size_t>();
    r.survivor_diverged = j.value("survivor_diverged", false);
    r.budget_exhausted = j.value("budget_exhausted", false);
    return r;
}

struct AggregateRow {
    std::string method;
    std::string instance;
    std::size_t n{0};
    double epsilon{0.0};
    std::optional<double> budget;
    std::size_t cells{0};
    std::size_t failed{0};
    double speedup_i_mean{0.0}, speedup_i_p10{0.0}, speedup_i_p50{0.0}, speedup_i_p90{0.0};
    double speedup_ii_mean{0.0};
    double cost_i_mean{0.0};
    double loss_mean{0.0}, loss_p90{0.0};
    double delta_rel_mean{0.0}, delta_rel_max{0.0};
    double loss_above_epsilon_rate{0.0};
    double rounds_mean{0.0};
    std::size_t probes{0};
    std::size_t ci_violations{0};
};

/// Groups rows by (method, instance, epsilon, budget), preserving first-seen order.
inline std::vector<AggregateRow> aggregate(const std::vector<MetricsRow>& rows) {
    using Key = std::tuple<std::string, std::string, double, double>;
    std::map<Key, std::size_t> index;
    std::vector<std::vector<const MetricsRow*>> groups;
    std::vector<AggregateRow> out;
    for (const auto& r : rows) {
        const Key k{r.method, r.instance, r.epsilon, r.budget.value_or(-1.0)};
        auto it = index.find(k);
        if (it == index.end()) {
            it = index.emplace(k, out.size()).first;
            AggregateRow a;
            a.method = r.method;
            a.instance = r.instance;
            a.n = r.n;
            a.epsilon = r.epsilon;
            a.budget = r.budget;
            out.push_back(a);
            groups.emplace_back();
        }
        groups[it->second].push_back(&r);
    }
    for (std::size_t g = 0; g < out.size(); ++g) {
        auto& a = out[g];
        std::vector<double> sp_i, sp_ii, cost, loss, drel, rounds;
        std::size_t above = 0;
        for (const auto* r : groups[g]) {
            ++a.cells;
            if (!r->ok) {
                ++a.failed;
                continue;
            }
            sp_i.push_back(r->speedup_i);
            sp_ii.push_back(r->speedup_ii);
            cost.push_back(r->cost_i);
            loss.push_back(r->loss);
            drel.push_back(r->delta_rel);
            rounds.push_back(static_cast<double>(r->rounds));
            if (r->loss > r->epsilon) ++above;
            a.probes += r->probes;
            a.ci_violations += r->ci_violations.value_or(0);
        }
        if (sp_i.empty()) continue;
        a.speedup_i_mean = stats::mean(sp_i);
        a.speedup_i_p10 = stats::percentile(sp_i, 0.1);
        a.speedup_i_p50 = stats::percentile(sp_i, 0.5);
        a.speedup_i_p90 = stats::percentile(sp_i, 0.9);
        a.speedup_ii_mean = stats::mean(sp_ii);
        a.cost_i_mean = stats::mean(cost);
        a.loss_mean = stats::mean(loss);
        a.loss_p90 = stats::percentile(loss, 0.9);
        a.delta_rel_mean = stats::mean(drel);
        a.delta_rel_max = *std::max_element(drel.begin(), drel.end());
        a.loss_above_epsilon_rate = static_cast<double>(above) / static_cast<double>(sp_i.size());
        a.rounds_mean = stats::mean(rounds);
    }
    return out;
}

inline const char* kAggregateHeader =
    "method,instance,n,epsilon,budget,cells,failed,speedup_i_mean,speedup_i_p10,speedup_i_p50,speedup_i_p90,"
    "speedup_ii_mean,cost_i_mean,loss_mean,loss_p90,delta_rel_mean,delta_rel_max,loss_above_epsilon_rate,rounds_mean,"
    "probes,ci_violations";

inline std::string aggregate_csv_line(const AggregateRow& a) {
    std::ostringstream os;
    os << a.method << ',' << a.instance << ',' << a.n << ',' << fmt_num(a.epsilon) << ','
       << (a.budget ? fmt_num(*a.budget) : std::string{}) << ',' << a.cells << ',' << a.failed << ','
       << fmt_num(a.speedup_i_mean) << ',' << fmt_num(a.speedup_i_p10) << ',' << fmt_num(a.speedup_i_p50) << ','
       << fmt_num(a.speedup_i_p90) << ',' << fmt_num(a.speedup_ii_mean) << ',' << fmt_num(a.cost_i_mean) << ','
       << fmt_num(a.loss_mean) << ',' << fmt_num(a.loss_p90) << ',' << fmt_num(a.delta_rel_mean) << ','
       << fmt_num(a.delta_rel_max) << ',' << fmt_num(a.loss_above_epsilon_rate) << ',' << fmt_num(a.rounds_mean)
       << ',' << a.probes << ',' << a.ci_violations;
    return os.str();
}

/// Writes metrics.csv, metrics.jsonl and aggregate.csv into `dir`.
inline void write_experiment_outputs(const ExperimentResult& res, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw BackendError("cannot create output directory '" + dir + "': " + ec.message());
    auto open = [&](const std::string& name) {
        const auto p = (std::filesystem::path(dir) / name).string();
        std::ofstream f(p);
        if (!f) throw BackendError("cannot write '" + p + "'");
        return f;
    };
    {
        auto f = open("metrics.csv");
        f << kMetricsHeader << '\n';
        for (const auto& r : res.rows) f << metrics_csv_line(r) << '\n';
    }
    {
        auto f = open("metrics.jsonl");
        for (const auto& r : res.rows) f << to_json(r).dump() << '\n';
    }
    {
        auto f = open("aggregate.csv");
        f << kAggregateHeader << '\n';
        for (const auto& a : aggregate(res.rows)) f << aggregate_csv_line(a) << '\n';
    }
}

inline std::size_t failed_rows(const ExperimentResult& res) {
    return static_cast<std::size_t>(std::count_if(res.rows.begin(), res.rows.end(), [](const MetricsRow& r) { return !r.ok; }));
}

}  // namespace abc
