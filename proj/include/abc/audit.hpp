// audit.hpp
//
// Structural checks on a recorded trace, plus the containment audit that counts
// probes whose interval excluded the known real accuracy.
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abc/ci_estimator.hpp"
#include "abc/core.hpp"

namespace abc {

struct AuditViolation {
    std::size_t round{0};
    std::string what;
};

struct AuditReport {
    std::vector<AuditViolation> violations;
    std::vector<std::string> checks;  // names of the checks that ran
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string id_str(ConfigId id) { return "configuration " + std::to_string(id); }

}  // namespace detail

/// `params`, when given, enables the prune-condition check and the bit-exact
/// replay of every interval from its recorded probe outcome.
inline AuditReport audit_trace(const RunTrace& trace, std::optional<RunParams> params = std::nullopt,
                               std::optional<std::size_t> n_configs = std::nullopt) {
    AuditReport rep;
    auto fail = [&](std::size_t round, std::string what) { rep.violations.push_back({round, std::move(what)}); };

    std::size_t n = n_configs.value_or(params ? params->n_configs : 0);
    if (n == 0)
        for (const auto& r : trace.rounds) {
            n = std::max(n, r.config_id);
            for (auto p : r.pruned_ids) n = std::max(n, p);
        }

    rep.checks = {"sequence", "interval-nesting", "snapshot-accounting", "prune-once", "incumbent-rule",
                  "incumbent-monotonicity", "snapshot-count"};
    if (params) {
        rep.checks.emplace_back("prune-condition");
        rep.checks.emplace_back("replay");
    }

    std::vector<ConfidenceInterval> ci(n + 1), cached(n + 1);
    std::vector<std::int64_t> last_tr(n + 1, 0), last_te(n + 1, 0);
    std::vector<bool> active(n + 1, true), probed(n + 1, false);
    ConfigId incumbent = 1;
    std::optional<double> last_snapshot_lower;
    std::size_t snapshots = 0;

    for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
        const auto& r = trace.rounds[k];
        const auto id = r.config_id;
        if (r.round != k + 1) fail(r.round, "round number " + std::to_string(r.round) + " out of sequence");
        if (id < 1 || id > n) {
            fail(r.round, detail::id_str(id) + " out of range");
            continue;
        }
        if (!active[id]) fail(r.round, detail::id_str(id) + " probed after being pruned");
        if (r.outcome.train_sample_size <= last_tr[id])
            fail(r.round, detail::id_str(id) + " train sample size did not grow");
        if (r.outcome.test_sample_size < last_te[id])
            fail(r.round, detail::id_str(id) + " test sample size shrank");
        last_tr[id] = r.outcome.train_sample_size;
        last_te[id] = r.outcome.test_sample_size;

        if (!(0.0 <= r.ci.lower && r.ci.lower <= r.ci.upper && r.ci.upper <= 1.0))
            fail(r.round, "interval [" + std::to_string(r.ci.lower) + ", " + std::to_string(r.ci.upper) +
                              "] is not a valid sub-interval of [0,1]");
        if (!r.ci.within(cached[id]))
            fail(r.round, detail::id_str(id) + " interval is not nested in its cached interval");

        if (params) {
            const bool full = r.outcome.train_sample_size >= params->max_train_size &&
                              r.outcome.test_sample_size >= params->max_test_size;
            try {
                const auto est = full ? nest_within(cached[id], {r.outcome.test_accuracy, r.outcome.test_accuracy})
                                      : estimate_ci(cached[id], bound_inputs(r.outcome, *params));
                if (!(est.ci == r.ci)) fail(r.round, detail::id_str(id) + " interval does not replay bit-exactly");
            } catch (const std::exception& e) {
                fail(r.round, std::string("replay failed: ") + e.what());
            }
        }
        ci[id] = r.ci;
        probed[id] = true;

        // Incumbent: the largest lower bound so far, changing only on strict improvement.
        ConfigId expect = probed[incumbent] ? incumbent : 0;
        for (ConfigId c = 1; c <= n; ++c)
            if (probed[c] && (expect == 0 || ci[c].lower > ci[expect].lower)) expect = c;
        if (r.incumbent_id != expect)
            fail(r.round, "incumbent is " + detail::id_str(r.incumbent_id) + ", expected " + detail::id_str(expect));
        incumbent = r.incumbent_id;

        if (r.snapshot != !r.pruned_ids.empty()) fail(r.round, "snapshot flag disagrees with the pruned list");
        const double inc_lower = incumbent >= 1 && incumbent <= n ? ci[incumbent].lower : 0.0;
        std::set<ConfigId> pruned_now(r.pruned_ids.begin(), r.pruned_ids.end());
        for (auto p : r.pruned_ids) {
            if (p < 1 || p > n) {
                fail(r.round, "pruned " + detail::id_str(p) + " out of range");
                continue;
            }
            if (!active[p]) fail(r.round, detail::id_str(p) + " pruned twice");
            if (params && !(ci[p].upper - inc_lower <= params->epsilon))
                fail(r.round, "pruned " + detail::id_str(p) + " has upper bound above incumbent lower + epsilon");
            active[p] = false;
        }
        if (params) {
            for (ConfigId c = 1; c <= n; ++c)
                if (active[c] && !pruned_now.contains(c) && ci[c].upper - inc_lower <= params->epsilon)
                    fail(r.round, detail::id_str(c) + " met the prune condition but was not pruned");
        }
        if (r.snapshot) {
            ++snapshots;
            for (ConfigId c = 1; c <= n; ++c)
                if (active[c]) cached[c] = ci[c];
            if (last_snapshot_lower && inc_lower < *last_snapshot_lower)
                fail(r.round, "incumbent lower bound decreased between snapshots");
            last_snapshot_lower = inc_lower;
        }
    }
    if (n >= 1 && snapshots >= std::max<std::size_t>(n, 1))
        fail(trace.rounds.empty() ? 0 : trace.rounds.back().round,
             std::to_string(snapshots) + " snapshots for " + std::to_string(n) + " configurations");
    return rep;
}

struct ContainmentRow {
    ConfigId id{0};
    std::size_t probes{0};
    std::size_t violations{0};
    double rate{0.0};
    bool flagged{false};
};

struct ContainmentReport {
    std::vector<ContainmentRow> per_config;
    std::size_t probes{0};
    std::size_t violations{0};
    double rate{0.0};
    double nominal{0.0};  // delta / n^2
    double threshold{0.0};  // nominal plus three binomial standard deviations at the total probe count
    bool flagged{false};
};

inline double binomial_threshold(double p, std::size_t trials, double sigmas = 3.0) {
    if (trials == 0) return 1.0;
    return p + sigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

/// Fraction of probes whose recorded interval excluded the configuration's real
/// accuracy. `ground_truth[id - 1]` is A_id.
inline ContainmentReport containment_audit(const std::vector<RunTrace>& traces, const std::vector<double>& ground_truth,
                                           double delta) {
    if (ground_truth.empty()) throw std::invalid_argument("containment audit needs ground-truth accuracies");
    const std::size_t n = ground_truth.size();
    ContainmentReport rep;
    rep.nominal = delta / static_cast<double>(n * n);
    rep.per_config.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.per_config[i].id = i + 1;
    for (const auto& t : traces) {
        for (const auto& r : t.rounds) {
            if (r.config_id < 1 || r.config_id > n)
                throw std::invalid_argument("trace references " + detail::id_str(r.config_id) +
                                            " without ground truth");
            auto& row = rep.per_config[r.config_id - 1];
            ++row.probes;
            if (!r.ci.contains(ground_truth[r.config_id - 1])) ++row.violations;
        }
    }
    for (auto& row : rep.per_config) {
        row.rate = row.probes ? static_cast<double>(row.violations) / static_cast<double>(row.probes) : 0.0;
        row.flagged = row.probes > 0 && row.rate > binomial_threshold(rep.nominal, row.probes);
        rep.probes += row.probes;
        rep.violations += row.violations;
    }
    rep.rate = rep.probes ? static_cast<double>(rep.violations) / static_cast<double>(rep.probes) : 0.0;
    rep.threshold = binomial_threshold(rep.nominal, rep.probes);
    rep.flagged = rep.rate > rep.threshold;
    return rep;
}

inline std::string format_audit(const AuditReport& rep) {
    std::ostringstream os;
    os << "checks:";
    for (const auto& c : rep.checks) os << ' ' << c;
    os << '\n';
    if (rep.ok()) {
        os << "structural audit: ok\n";
    } else {
        os << "structural audit: " << rep.violations.size() << " violation(s)\n";
        for (const auto& v : rep.violations) os << "  round " << v.round << ": " << v.what << '\n';
    }
    return os.str();
}

}  // namespace abc
