// synthetic.hpp
//
// Learning-curve simulator with known ground truth. A configuration's true
// accuracy after training on s samples follows a_inf - b * s^-beta (held flat
// over an optional plateau range); its training accuracy sits an overfitting gap
// g * s^-gamma above that; a probe costs kappa * s^alpha.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/backend.hpp"
#include "abc/core.hpp"

namespace abc {

struct Plateau {
    std::int64_t low{0};
    std::int64_t high{0};
};

struct CurveSpec {
    std::string label;
    double a_inf{0.9};
    double b{0.0};
    double beta{0.5};
    double overfit_gap{0.0};
    double gamma{0.5};
    double kappa{1.0};
    double alpha{1.0};
    std::optional<Plateau> plateau;

    double curve(double s) const { return a_inf - b * std::pow(s, -beta); }

    double true_accuracy(std::int64_t s) const {
        double x = static_cast<double>(s);
        if (plateau && s >= plateau->low && s <= plateau->high) x = static_cast<double>(plateau->low);
        return std::clamp(curve(x), 0.0, 1.0);
    }
    double train_accuracy(std::int64_t s) const {
        return std::clamp(true_accuracy(s) + overfit_gap * std::pow(static_cast<double>(s), -gamma), 0.0, 1.0);
    }
    double cost(std::int64_t s) const { return kappa * std::pow(static_cast<double>(s), alpha); }

    // Curves only need to make sense from the smallest size that will be probed.
    static constexpr std::int64_t kMinProbeSize = 100;

    void validate(std::int64_t initial_size = kMinProbeSize) const {
        const std::string who = "curve '" + label + "': ";
        if (!(a_inf >= 0.0 && a_inf <= 1.0)) throw std::invalid_argument(who + "a_inf outside [0,1]");
        if (!(b >= 0.0)) throw std::invalid_argument(who + "b must be >= 0");
        if (!(beta > 0.0)) throw std::invalid_argument(who + "beta must be > 0");
        if (!(overfit_gap >= 0.0)) throw std::invalid_argument(who + "overfit_gap must be >= 0");
        if (!(gamma > 0.0)) throw std::invalid_argument(who + "gamma must be > 0");
        if (!(kappa > 0.0)) throw std::invalid_argument(who + "kappa must be > 0");
        if (!(alpha > 0.0)) throw std::invalid_argument(who + "alpha must be > 0");
        if (curve(static_cast<double>(initial_size)) < 0.0)
            throw std::invalid_argument(who + "accuracy negative at the initial sample size");
        if (plateau && (plateau->low < 1 || plateau->high < plateau->low))
            throw std::invalid_argument(who + "invalid plateau range");
    }
};

enum class TestNoise { Binomial, None };

/// One simulated probe. The sampled test accuracy is Binomial(s_te, A(s_tr)) / s_te;
/// a probe on the whole test set (s_te == full_test_size) measures A(s_tr) exactly.
inline ProbeOutcome probe_synthetic(const CurveSpec& spec, std::int64_t s_tr, std::int64_t s_te, std::uint64_t seed,
                                    std::int64_t full_test_size = 0, TestNoise noise = TestNoise::Binomial) {
    if (s_tr < 1 || s_te < 1) throw std::invalid_argument("probe_synthetic: sample sizes must be >= 1");
    ProbeOutcome out;
    out.train_sample_size = s_tr;
    out.test_sample_size = s_te;
    const double a = spec.true_accuracy(s_tr);
    out.train_accuracy = spec.train_accuracy(s_tr);
    if (noise == TestNoise::None || (full_test_size > 0 && s_te >= full_test_size)) {
        out.test_accuracy = a;
    } else {
        std::mt19937_64 rng(seed);
        std::binomial_distribution<std::int64_t> draw(s_te, a);
        out.test_accuracy = static_cast<double>(draw(rng)) / static_cast<double>(s_te);
    }
    out.cost = spec.cost(s_tr);
    return out;
}

/// True when the training accuracy at every size in [from, to] stays at or above
/// the true accuracy at `to`, i.e. the upper bound cannot be violated by the curve itself.
inline bool satisfies_fitness(const CurveSpec& spec, std::int64_t from, std::int64_t to) {
    const double target = spec.true_accuracy(to);
    auto check = [&](std::int64_t s) { return spec.train_accuracy(s) >= target; };
    for (double s = static_cast<double>(from); s < static_cast<double>(to); s *= 1.02) {
        if (!check(static_cast<std::int64_t>(s))) return false;
    }
    if (spec.plateau) {
        for (auto s : {spec.plateau->low, spec.plateau->high}) {
            if (s >= from && s <= to && !check(s)) return false;
        }
    }
    return check(to);
}

struct SyntheticInstance {
    std::string name;
    std::int64_t train_size{1};
    std::int64_t test_size{1};
    std::vector<CurveSpec> configs;

    double real_accuracy(ConfigId id) const { return configs.at(id - 1).true_accuracy(train_size); }

    SyntheticInstance first(std::size_t n) const {
        if (n > configs.size())
            throw std::invalid_argument("instance '" + name + "' has only " + std::to_string(configs.size()) +
                                        " configurations");
        SyntheticInstance out = *this;
        out.configs.resize(n);
        return out;
    }
};

inline json to_json(const CurveSpec& c) {
    json j{{"label", c.label},         {"a_inf", c.a_inf},           {"b", c.b},
           {"beta", c.beta},           {"overfit_gap", c.overfit_gap}, {"gamma", c.gamma},
           {"kappa", c.kappa},         {"alpha", c.alpha}};
    if (c.plateau) j["plateau"] = json::array({c.plateau->low, c.plateau->high});
    return j;
}

inline CurveSpec curve_spec_from_json(const json& j) {
    static const std::vector<std::string> known{"label", "a_inf", "b",     "beta",  "overfit_gap",
                                                "gamma", "kappa", "alpha", "plateau"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("unknown curve field '" + key + "'");
    }
    CurveSpec c;
    c.label = j.value("label", std::string{});
    c.a_inf = j.at("a_inf").get<double>();
    c.b = j.value("b", 0.0);
    c.beta = j.value("beta", 0.5);
    c.overfit_gap = j.value("overfit_gap", 0.0);
    c.gamma = j.value("gamma", 0.5);
    c.kappa = j.value("kappa", 1.0);
    c.alpha = j.value("alpha", 1.0);
    if (j.contains("plateau")) {
        const auto& p = j.at("plateau");
        c.plateau = Plateau{p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()};
    }
    return c;
}

inline json to_json(const SyntheticInstance& inst) {
    json configs = json::array();
    for (const auto& c : inst.configs) configs.push_back(to_json(c));
    return json{{"name", inst.name}, {"train_size", inst.train_size}, {"test_size", inst.test_size}, {"configs", configs}};
}

inline SyntheticInstance synthetic_instance_from_json(const json& j) {
    for (const auto& [key, _] : j.items()) {
        if (key != "name" && key != "train_size" && key != "test_size" && key != "configs")
            throw std::invalid_argument("unknown instance field '" + key + "'");
    }
    SyntheticInstance inst;
    inst.name = j.value("name", std::string{"synthetic"});
    inst.train_size = j.at("train_size").get<std::int64_t>();
    inst.test_size = j.at("test_size").get<std::int64_t>();
    if (inst.train_size < 1 || inst.test_size < 1) throw std::invalid_argument("instance sizes must be >= 1");
    for (const auto& c : j.at("configs")) inst.configs.push_back(curve_spec_from_json(c));
    if (inst.configs.empty()) throw std::invalid_argument("instance has no configurations");
    for (std::size_t i = 0; i < inst.configs.size(); ++i) {
        if (inst.configs[i].label.empty()) inst.configs[i].label = "config-" + std::to_string(i + 1);
        inst.configs[i].validate();
    }
    return inst;
}

inline SyntheticInstance load_synthetic_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot open instance file '" + path + "'");
    try {
        return synthetic_instance_from_json(json::parse(in));
    } catch (const BackendError&) {
        throw;
    } catch (const std::exception& e) {
        throw BackendError("instance file '" + path + "': " + e.what());
    }
}

inline void save_synthetic_instance(const SyntheticInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw BackendError("cannot write instance file '" + path + "'");
    out << to_json(inst).dump(2) << '\n';
}

class SyntheticBackend final : public ProbeBackend {
public:
    explicit SyntheticBackend(SyntheticInstance inst, TestNoise noise = TestNoise::Binomial)
        : inst_(std::move(inst)), noise_(noise) {}

    const SyntheticInstance& instance() const { return inst_; }

    std::size_t size() const override { return inst_.configs.size(); }
    std::string label(ConfigId id) const override {
        check_id(id);
        return inst_.configs[id - 1].label;
    }
    std::int64_t train_size() const override { return inst_.train_size; }
    std::int64_t test_size() const override { return inst_.test_size; }

    ProbeOutcome probe(ConfigId id, std::int64_t s_tr, std::int64_t s_te, std::uint64_t seed) const override {
        check_id(id);
        check_sizes(s_tr, s_te);
        return probe_synthetic(inst_.configs[id - 1], s_tr, s_te, seed, inst_.test_size, noise_);
    }

    FullEvaluation full_evaluate(ConfigId id, std::uint64_t) const override {
        check_id(id);
        const auto& c = inst_.configs[id - 1];
        return {c.true_accuracy(inst_.train_size), c.cost(inst_.train_size)};
    }

    std::optional<double> predicted_cost(ConfigId id, std::int64_t s_tr, std::int64_t) const override {
        check_id(id);
        return inst_.configs[id - 1].cost(s_tr);
    }

    std::optional<double> ground_truth(ConfigId id) const override {
        check_id(id);
        return inst_.real_accuracy(id);
    }

private:
    SyntheticInstance inst_;
    TestNoise noise_;
};

}  // namespace abc
