// backend.hpp
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "abc/core.hpp"

namespace abc {

/// Raised for dataset and training failures (missing files, malformed rows, ...).
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FullEvaluation {
    double accuracy{0.0};  // accuracy on all of D_te of the model trained on all of D_tr
    double cost{0.0};
};

/// Anything that can train configuration `id` on s_tr training samples and
/// evaluate on s_te test samples. Implementations must be safe to call
/// concurrently and deterministic in (id, sizes, seed).
class ProbeBackend {
public:
    virtual ~ProbeBackend() = default;

    virtual std::size_t size() const = 0;
    virtual std::string label(ConfigId id) const = 0;
    virtual std::int64_t train_size() const = 0;
    virtual std::int64_t test_size() const = 0;

    virtual ProbeOutcome probe(ConfigId id, std::int64_t s_tr, std::int64_t s_te, std::uint64_t seed) const = 0;
    virtual FullEvaluation full_evaluate(ConfigId id, std::uint64_t seed) const = 0;

    /// Cost of a probe known before running it, if the backend has a cost model.
    virtual std::optional<double> predicted_cost(ConfigId, std::int64_t, std::int64_t) const {
        return std::nullopt;
    }
    /// Real test accuracy known by construction (simulators only).
    virtual std::optional<double> ground_truth(ConfigId) const { return std::nullopt; }

protected:
    void check_id(ConfigId id) const {
        if (id < 1 || id > size())
            throw BackendError("configuration id " + std::to_string(id) + " out of range");
    }
    void check_sizes(std::int64_t s_tr, std::int64_t s_te) const {
        if (s_tr < 1 || s_tr > train_size())
            throw BackendError("train sample size " + std::to_string(s_tr) + " outside [1, " +
                               std::to_string(train_size()) + "]");
        if (s_te < 1 || s_te > test_size())
            throw BackendError("test sample size " + std::to_string(s_te) + " outside [1, " +
                               std::to_string(test_size()) + "]");
    }
};

}  // namespace abc
