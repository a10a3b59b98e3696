// sources.hpp
//
// Declarative descriptions of where configurations come from (a synthetic
// instance file, a seeded instance family, or a CSV dataset plus a learner
// grid), and the strict JSON readers shared by run configs and experiment specs.
#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abc/backend.hpp"
#include "abc/core.hpp"
#include "abc/dataset.hpp"
#include "abc/instances.hpp"
#include "abc/learners.hpp"
#include "abc/scheduler.hpp"
#include "abc/synthetic.hpp"

namespace abc {

/// Invalid configuration content. The message starts with the offending key path.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace cfg {

inline std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError((path.empty() ? std::string("<root>") : path) + ": expected an object");
}

inline void check_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& path) {
    require_object(j, path);
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) throw ConfigError(join(path, key) + ": unknown key");
    }
}

template <class T>
T get(const json& j, std::string_view key, const std::string& path) {
    const auto where = join(path, key);
    if (!j.contains(key)) throw ConfigError(where + ": required key missing");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

template <class T>
T get_or(const json& j, std::string_view key, T fallback, const std::string& path) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    return get<T>(j, key, path);
}

/// Relative paths in a config file are relative to the file's directory.
inline std::string resolve(const std::string& p, const std::filesystem::path& base_dir) {
    const std::filesystem::path path(p);
    if (path.is_absolute() || base_dir.empty()) return path.string();
    return (base_dir / path).lexically_normal().string();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace cfg

inline LearnerSpec learner_spec_from_json(const json& j, const std::string& path) {
    cfg::check_keys(j, {"label", "kind", "learning_rate", "epochs", "l2", "cost_model"}, path);
    LearnerSpec s;
    s.label = cfg::get_or<std::string>(j, "label", "", path);
    try {
        s.kind = parse_learner_kind(cfg::get<std::string>(j, "kind", path));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(cfg::join(path, "kind") + ": " + e.what());
    }
    s.learning_rate = cfg::get_or(j, "learning_rate", s.learning_rate, path);
    s.epochs = cfg::get_or(j, "epochs", s.epochs, path);
    s.l2 = cfg::get_or(j, "l2", s.l2, path);
    if (j.contains("cost_model")) {
        const auto cp = cfg::join(path, "cost_model");
        cfg::check_keys(j["cost_model"], {"kappa", "alpha"}, cp);
        s.cost_model = CostModel{cfg::get_or(j["cost_model"], "kappa", 1.0, cp), cfg::get_or(j["cost_model"], "alpha", 1.0, cp)};
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return s;
}

inline json to_json(const LearnerSpec& s) {
    json j{{"label", s.label}, {"kind", to_string(s.kind)}};
    if (s.kind == LearnerKind::LogisticRegressionSgd) {
        j["learning_rate"] = s.learning_rate;
        j["epochs"] = s.epochs;
        j["l2"] = s.l2;
    }
    if (s.cost_model) j["cost_model"] = json{{"kappa", s.cost_model->kappa}, {"alpha", s.cost_model->alpha}};
    return j;
}

/// Overrides the fields present in `j` on top of `base`. If only the cost
/// exponent is given, the step factor follows it as 2^(1/alpha).
inline RunParams params_from_json(const json& j, const std::string& path, RunParams base = {}) {
    cfg::check_keys(j,
                    {"epsilon", "delta", "initial_train_size", "initial_test_size", "step_factor_c",
                     "alpha_cost_exponent", "seed"},
                    path);
    RunParams p = base;
    p.epsilon = cfg::get_or(j, "epsilon", p.epsilon, path);
    p.delta = cfg::get_or(j, "delta", p.delta, path);
    p.initial_train_size = cfg::get_or(j, "initial_train_size", p.initial_train_size, path);
    p.initial_test_size = cfg::get_or(j, "initial_test_size", p.initial_test_size, path);
    p.alpha_cost_exponent = cfg::get_or(j, "alpha_cost_exponent", p.alpha_cost_exponent, path);
    if (j.contains("step_factor_c")) {
        p.step_factor_c = cfg::get<double>(j, "step_factor_c", path);
    } else if (j.contains("alpha_cost_exponent")) {
        if (!(p.alpha_cost_exponent > 0.0)) throw ConfigError(cfg::join(path, "alpha_cost_exponent") + ": must be > 0");
        p.step_factor_c = optimal_step_size(p.alpha_cost_exponent);
    }
    p.seed = cfg::get_or(j, "seed", p.seed, path);
    return p;
}

inline SyntheticInstance make_family_instance(const std::string& family, std::uint64_t seed, std::size_t n,
                                              std::optional<std::int64_t> train, std::optional<std::int64_t> test) {
    if (family == "paper_shaped")
        return instances::paper_shaped(seed, n, train.value_or(4'000'000), test.value_or(1'000'000));
    if (family == "close_race") return instances::close_race(seed, n, train.value_or(2'000'000), test.value_or(1'000'000));
    if (family == "adversarial_plateau")
        return instances::adversarial_plateau(seed, n, train.value_or(1'000'000), test.value_or(500'000));
    if (family == "skewed") return instances::skewed(seed, n, train.value_or(4'000'000), test.value_or(2'000'000));
    throw ConfigError("unknown instance family '" + family +
                      "' (expected paper_shaped, close_race, adversarial_plateau or skewed)");
}

struct InstanceSource {
    enum class Kind { SyntheticFile, Family, Csv };
    Kind kind{Kind::SyntheticFile};
    std::string path;  // instance file or CSV file, already resolved

    std::string family;
    std::uint64_t family_seed{0};
    std::optional<std::size_t> n;
    std::optional<std::int64_t> train_size;
    std::optional<std::int64_t> test_size;

    CsvOptions csv;
    double holdout{0.3};
    std::uint64_t split_seed{0};
    std::vector<LearnerSpec> learners;
    std::string name;  // optional display name
};

/// Accepted shapes:
///   {"type": "synthetic", "path": ...}
///   {"type": "family", "family": ..., "seed": ..., "n": ..., "train_size": ..., "test_size": ...}
///   {"type": "csv", "path": ..., "header": ..., "holdout": ..., "split_seed": ..., "learners": [...]}
inline InstanceSource instance_source_from_json(const json& j, const std::string& path,
                                                const std::filesystem::path& base_dir) {
    cfg::require_object(j, path);
    const auto type = cfg::get<std::string>(j, "type", path);
    InstanceSource s;
    s.name = cfg::get_or<std::string>(j, "name", "", path);
    if (type == "synthetic") {
        cfg::check_keys(j, {"type", "name", "path"}, path);
        s.kind = InstanceSource::Kind::SyntheticFile;
        s.path = cfg::resolve(cfg::get<std::string>(j, "path", path), base_dir);
    } else if (type == "family") {
        cfg::check_keys(j, {"type", "name", "family", "seed", "n", "train_size", "test_size"}, path);
        s.kind = InstanceSource::Kind::Family;
        s.family = cfg::get<std::string>(j, "family", path);
        s.family_seed = cfg::get_or<std::uint64_t>(j, "seed", 0, path);
        if (j.contains("n")) s.n = cfg::get<std::size_t>(j, "n", path);
        if (j.contains("train_size")) s.train_size = cfg::get<std::int64_t>(j, "train_size", path);
        if (j.contains("test_size")) s.test_size = cfg::get<std::int64_t>(j, "test_size", path);
    } else if (type == "csv") {
        cfg::check_keys(j, {"type", "name", "path", "header", "holdout", "split_seed", "learners"}, path);
        s.kind = InstanceSource::Kind::Csv;
        s.path = cfg::resolve(cfg::get<std::string>(j, "path", path), base_dir);
        s.csv.header = cfg::get_or(j, "header", false, path);
        s.holdout = cfg::get_or(j, "holdout", s.holdout, path);
        if (!(s.holdout > 0.0 && s.holdout < 1.0)) throw ConfigError(cfg::join(path, "holdout") + ": must lie in (0,1)");
        s.split_seed = cfg::get_or<std::uint64_t>(j, "split_seed", 0, path);
        const auto lp = cfg::join(path, "learners");
        if (!j.contains("learners") || !j["learners"].is_array() || j["learners"].empty())
            throw ConfigError(lp + ": expected a nonempty list of learners");
        for (std::size_t i = 0; i < j["learners"].size(); ++i)
            s.learners.push_back(learner_spec_from_json(j["learners"][i], lp + "[" + std::to_string(i) + "]"));
    } else {
        throw ConfigError(cfg::join(path, "type") + ": unknown source type '" + type +
                          "' (expected synthetic, family or csv)");
    }
    return s;
}

struct BuiltInstance {
    std::string id;
    std::shared_ptr<const ProbeBackend> backend;
};

/// Loads data and builds the backend. `n`, when given, keeps the first n
/// configurations (families are generated with n configurations instead).
inline BuiltInstance build_instance(const InstanceSource& s, std::optional<std::size_t> n = std::nullopt,
                                    std::shared_ptr<const Dataset> preloaded = nullptr) {
    BuiltInstance out;
    switch (s.kind) {
        case InstanceSource::Kind::SyntheticFile: {
            auto inst = load_synthetic_instance(s.path);
            std::string id = s.name.empty() ? inst.name : s.name;
            if (n) {
                inst = inst.first(*n);
                id += "_n" + std::to_string(*n);
            }
            out.id = id;
            out.backend = std::make_shared<SyntheticBackend>(std::move(inst));
            break;
        }
        case InstanceSource::Kind::Family: {
            const auto count = n ? n : s.n;
            if (!count) throw ConfigError("family instance '" + s.family + "' needs n (or an n_configs grid)");
            auto inst = make_family_instance(s.family, s.family_seed, *count, s.train_size, s.test_size);
            out.id = s.name.empty() ? inst.name : s.name + "_n" + std::to_string(*count);
            out.backend = std::make_shared<SyntheticBackend>(std::move(inst));
            break;
        }
        case InstanceSource::Kind::Csv: {
            auto data = preloaded ? preloaded : std::make_shared<const Dataset>(load_csv(s.path, s.csv));
            auto learners = s.learners;
            std::string id = s.name.empty() ? std::filesystem::path(s.path).stem().string() : s.name;
            if (n) {
                if (*n > learners.size())
                    throw ConfigError("csv instance '" + id + "' has only " + std::to_string(learners.size()) +
                                      " learners");
                learners.resize(*n);
                id += "_n" + std::to_string(*n);
            }
            out.id = id;
            out.backend = std::make_shared<LearnerBackend>(DatasetHandle(data, s.holdout, s.split_seed), std::move(learners));
            break;
        }
    }
    return out;
}

}  // namespace abc
