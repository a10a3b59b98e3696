// learners.hpp
//
// Small built-in learners used as configurations over CSV datasets.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "abc/backend.hpp"
#include "abc/dataset.hpp"
#include "abc/random.hpp"

namespace abc {

enum class LearnerKind { LogisticRegressionSgd, DecisionStump, MajorityClass };

inline std::string_view to_string(LearnerKind k) {
    switch (k) {
        case LearnerKind::LogisticRegressionSgd: return "logistic_regression_sgd";
        case LearnerKind::DecisionStump: return "decision_stump";
        case LearnerKind::MajorityClass: return "majority_class";
    }
    return "?";
}

inline LearnerKind parse_learner_kind(std::string_view s) {
    if (s == "logistic_regression_sgd") return LearnerKind::LogisticRegressionSgd;
    if (s == "decision_stump") return LearnerKind::DecisionStump;
    if (s == "majority_class") return LearnerKind::MajorityClass;
    throw std::invalid_argument("unknown learner kind '" + std::string(s) + "'");
}

/// Replaces measured wall time with kappa * s_tr^alpha, for reproducible traces.
struct CostModel {
    double kappa{1.0};
    double alpha{1.0};
    double operator()(std::int64_t s_tr) const { return kappa * std::pow(static_cast<double>(s_tr), alpha); }
};

struct LearnerSpec {
    std::string label;
    LearnerKind kind{LearnerKind::MajorityClass};
    double learning_rate{0.1};
    int epochs{10};
    double l2{0.0};
    std::optional<CostModel> cost_model;

    void validate() const {
        if (kind == LearnerKind::LogisticRegressionSgd) {
            if (!(learning_rate > 0.0)) throw std::invalid_argument("learner '" + label + "': learning_rate must be > 0");
            if (epochs < 1) throw std::invalid_argument("learner '" + label + "': epochs must be >= 1");
            if (!(l2 >= 0.0)) throw std::invalid_argument("learner '" + label + "': l2 must be >= 0");
        }
        if (cost_model && !(cost_model->kappa > 0.0 && cost_model->alpha > 0.0))
            throw std::invalid_argument("learner '" + label + "': cost model needs kappa > 0 and alpha > 0");
    }
};

struct ConstantModel {
    std::uint8_t label{0};
};

struct StumpModel {
    std::size_t feature{0};
    double threshold{0.0};
    bool positive_above{true};  // predict 1 when x > threshold
};

struct LinearModel {
    std::vector<double> weights;
    double bias{0.0};
};

using Model = std::variant<ConstantModel, StumpModel, LinearModel>;

inline std::uint8_t predict(const Model& model, std::span<const double> x) {
    return std::visit(
        [&](const auto& m) -> std::uint8_t {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ConstantModel>) {
                return m.label;
            } else if constexpr (std::is_same_v<M, StumpModel>) {
                const bool above = x[m.feature] > m.threshold;
                return static_cast<std::uint8_t>(above == m.positive_above);
            } else {
                double z = m.bias;
                for (std::size_t j = 0; j < x.size(); ++j) z += m.weights[j] * x[j];
                return static_cast<std::uint8_t>(z >= 0.0);
            }
        },
        model);
}

inline double accuracy(const Model& model, const Dataset& data, std::span<const std::size_t> idx) {
    if (idx.empty()) return 0.0;
    std::size_t correct = 0;
    for (auto i : idx) correct += predict(model, data.row(i)) == data.labels[i];
    return static_cast<double>(correct) / static_cast<double>(idx.size());
}

struct TrainResult {
    Model model;
    bool degenerate{false};
};

namespace detail {

inline ConstantModel majority_of(const Dataset& data, std::span<const std::size_t> idx) {
    std::size_t ones = 0;
    for (auto i : idx) ones += data.labels[i];
    return ConstantModel{static_cast<std::uint8_t>(2 * ones > idx.size())};
}

inline StumpModel fit_stump(const Dataset& data, std::span<const std::size_t> idx) {
    const std::size_t n = idx.size();
    std::size_t total_pos = 0;
    for (auto i : idx) total_pos += data.labels[i];

    StumpModel best{0, -std::numeric_limits<double>::infinity(), true};
    std::size_t best_errors = std::min(total_pos, n - total_pos) + 1;
    std::vector<std::size_t> order(idx.begin(), idx.end());
    for (std::size_t j = 0; j < data.cols; ++j) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return data.features[a * data.cols + j] < data.features[b * data.cols + j];
        });
        // Threshold below everything, then between each pair of distinct values.
        std::size_t pos_below = 0;
        for (std::size_t k = 0; k <= n; ++k) {
            if (k > 0) pos_below += data.labels[order[k - 1]];
            const bool boundary =
                k == 0 || k == n ||
                data.features[order[k - 1] * data.cols + j] < data.features[order[k] * data.cols + j];
            if (!boundary) continue;
            const std::size_t neg_below = k - pos_below;
            const std::size_t pos_above = total_pos - pos_below;
            const std::size_t neg_above = (n - k) - pos_above;
            // positive_above: errors are positives below + negatives above.
            const std::size_t err_up = pos_below + neg_above;
            const std::size_t err_down = neg_below + pos_above;
            const double thr = k == 0 ? -std::numeric_limits<double>::infinity()
                               : k == n ? data.features[order[n - 1] * data.cols + j]
                                        : 0.5 * (data.features[order[k - 1] * data.cols + j] +
                                                 data.features[order[k] * data.cols + j]);
            if (err_up < best_errors) {
                best_errors = err_up;
                best = {j, thr, true};
            }
            if (err_down < best_errors) {
                best_errors = err_down;
                best = {j, thr, false};
            }
        }
    }
    return best;
}

inline LinearModel fit_logistic_sgd(const LearnerSpec& spec, const Dataset& data, std::span<const std::size_t> idx,
                                    std::uint64_t seed) {
    LinearModel m{std::vector<double>(data.cols, 0.0), 0.0};
    std::vector<std::size_t> order(idx.begin(), idx.end());
    std::mt19937_64 rng(seed);
    for (int epoch = 0; epoch < spec.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (auto i : order) {
            const auto x = data.row(i);
            double z = m.bias;
            for (std::size_t j = 0; j < data.cols; ++j) z += m.weights[j] * x[j];
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double g = p - static_cast<double>(data.labels[i]);
            for (std::size_t j = 0; j < data.cols; ++j)
                m.weights[j] -= spec.learning_rate * (g * x[j] + spec.l2 * m.weights[j]);
            m.bias -= spec.learning_rate * g;
        }
    }
    return m;
}

}  // namespace detail

/// Trains on the given rows. A sample holding a single class yields a constant model.
inline TrainResult train(const LearnerSpec& spec, const Dataset& data, std::span<const std::size_t> idx,
                         std::uint64_t seed) {
    if (idx.empty()) throw BackendError("cannot train '" + spec.label + "' on an empty sample");
    const auto majority = detail::majority_of(data, idx);
    std::size_t ones = 0;
    for (auto i : idx) ones += data.labels[i];
    if (ones == 0 || ones == idx.size()) return {majority, true};

    switch (spec.kind) {
        case LearnerKind::MajorityClass: return {majority, false};
        case LearnerKind::DecisionStump: return {detail::fit_stump(data, idx), false};
        case LearnerKind::LogisticRegressionSgd: return {detail::fit_logistic_sgd(spec, data, idx, seed), false};
    }
    throw std::logic_error("unknown learner kind");
}

inline ProbeOutcome probe_learner(const DatasetHandle& handle, const LearnerSpec& learner, std::int64_t s_tr,
                                  std::int64_t s_te, std::uint64_t seed) {
    const auto train_idx = handle.sample_nested(Part::Train, s_tr);
    const auto test_idx = handle.sample_nested(Part::Test, s_te);
    const auto start = std::chrono::steady_clock::now();
    const auto trained = train(learner, handle.data(), train_idx, seed);
    ProbeOutcome out;
    out.train_sample_size = s_tr;
    out.test_sample_size = s_te;
    out.train_accuracy = accuracy(trained.model, handle.data(), train_idx);
    out.test_accuracy = accuracy(trained.model, handle.data(), test_idx);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.cost = learner.cost_model ? (*learner.cost_model)(s_tr) : elapsed.count();
    out.degenerate_sample = trained.degenerate;
    return out;
}

/// Real test accuracy: train on all of D_tr, evaluate on all of D_te.
inline double full_evaluate(const DatasetHandle& handle, const LearnerSpec& learner, std::uint64_t seed = 0) {
    return probe_learner(handle, learner, handle.train_size(), handle.test_size(), seed).test_accuracy;
}

class LearnerBackend final : public ProbeBackend {
public:
    LearnerBackend(DatasetHandle handle, std::vector<LearnerSpec> learners)
        : handle_(std::move(handle)), learners_(std::move(learners)) {
        if (learners_.empty()) throw std::invalid_argument("learner backend needs at least one learner");
        for (std::size_t i = 0; i < learners_.size(); ++i) {
            if (learners_[i].label.empty()) learners_[i].label = "learner-" + std::to_string(i + 1);
            learners_[i].validate();
        }
    }

    const DatasetHandle& handle() const { return handle_; }
    const std::vector<LearnerSpec>& learners() const { return learners_; }

    std::size_t size() const override { return learners_.size(); }
    std::string label(ConfigId id) const override {
        check_id(id);
        return learners_[id - 1].label;
    }
    std::int64_t train_size() const override { return handle_.train_size(); }
    std::int64_t test_size() const override { return handle_.test_size(); }

    ProbeOutcome probe(ConfigId id, std::int64_t s_tr, std::int64_t s_te, std::uint64_t seed) const override {
        check_id(id);
        check_sizes(s_tr, s_te);
        return probe_learner(handle_, learners_[id - 1], s_tr, s_te, seed);
    }

    FullEvaluation full_evaluate(ConfigId id, std::uint64_t seed) const override {
        check_id(id);
        const auto out = probe_learner(handle_, learners_[id - 1], train_size(), test_size(), seed);
        return {out.test_accuracy, out.cost};
    }

    std::optional<double> predicted_cost(ConfigId id, std::int64_t s_tr, std::int64_t) const override {
        check_id(id);
        if (const auto& cm = learners_[id - 1].cost_model) return (*cm)(s_tr);
        return std::nullopt;
    }

private:
    DatasetHandle handle_;
    std::vector<LearnerSpec> learners_;
};

}  // namespace abc
