// ci_estimator.hpp
//
// Confidence bounds on the real test accuracy of a configuration, computed from
// a single probe. The upper bound relies on the fitness condition (a model fits
// its own training sample at least as well as any other model of the same
// family); the lower bound relies on exploitativeness (full training data never
// yields a worse model than a sample). Each side fails with probability at most
// delta / (2 n^2).
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "abc/core.hpp"

namespace abc {

struct BoundInputs {
    ProbeOutcome outcome;
    std::size_t n_configs{1};
    double delta{0.5};
    std::int64_t full_test_size{1};

    void validate() const {
        if (n_configs < 1) throw std::invalid_argument("bound inputs: n_configs must be >= 1");
        if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("bound inputs: delta must lie in (0,1)");
        if (outcome.train_sample_size < 1)
            throw std::invalid_argument("bound inputs: train sample size must be >= 1");
        if (outcome.test_sample_size < 1)
            throw std::invalid_argument("bound inputs: test sample size must be >= 1");
        if (full_test_size < outcome.test_sample_size)
            throw std::invalid_argument("bound inputs: full_test_size smaller than test sample size");
    }
};

inline BoundInputs bound_inputs(const ProbeOutcome& outcome, const RunParams& params) {
    return BoundInputs{outcome, params.n_configs, params.delta, params.max_test_size};
}

/// Unclamped upper bound: training accuracy plus the sample and full-test variation terms.
inline double upper_bound(const BoundInputs& in) {
    in.validate();
    const double n = static_cast<double>(in.n_configs);
    const double log_term = std::log(4.0 * n * n / in.delta);
    const double s_tr = static_cast<double>(in.outcome.train_sample_size);
    const double d_te = static_cast<double>(in.full_test_size);
    return in.outcome.train_accuracy + std::sqrt(log_term / (2.0 * s_tr)) + std::sqrt(log_term / (2.0 * d_te));
}

/// Unclamped lower bound: sampled test accuracy minus the test-sample variation term.
inline double lower_bound(const BoundInputs& in) {
    in.validate();
    const double n = static_cast<double>(in.n_configs);
    const double log_term = std::log(2.0 * n * n / in.delta);
    const double s_te = static_cast<double>(in.outcome.test_sample_size);
    return in.outcome.test_accuracy - std::sqrt(log_term / (2.0 * s_te));
}

struct CiEstimate {
    ConfidenceInterval ci;
    bool anomaly{false};  // new interval was disjoint from the cached one
};

/// Restricts `raw` to lie inside `cached`. When the two are disjoint the result is
/// the cached endpoint nearest to `raw`, flagged as an anomaly.
inline CiEstimate nest_within(const ConfidenceInterval& cached, const ConfidenceInterval& raw) {
    if (raw.upper < cached.lower) return {{cached.lower, cached.lower}, true};
    if (raw.lower > cached.upper) return {{cached.upper, cached.upper}, true};
    return {{std::max(raw.lower, cached.lower), std::min(raw.upper, cached.upper)}, false};
}

inline CiEstimate estimate_ci(const ConfidenceInterval& cached, const BoundInputs& in) {
    const ConfidenceInterval raw = clamp_interval(lower_bound(in), upper_bound(in));
    return nest_within(cached, raw);
}

inline CiEstimate estimate_ci(const ConfigurationState& config, const BoundInputs& in) {
    return estimate_ci(config.cached_ci, in);
}

}  // namespace abc
