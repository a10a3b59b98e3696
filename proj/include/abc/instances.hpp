// instances.hpp
//
// Seeded generators for families of synthetic instances. Every generated curve
// satisfies the fitness condition from 100 samples up to train_size (checked), and accuracy is
// nondecreasing in the sample size.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/random.hpp"
#include "abc/synthetic.hpp"

namespace abc::instances {

/// A curve whose training accuracy is a_inf + (k - 1) b s^-beta, so it never
/// drops below the asymptote.
inline CurveSpec smooth_curve(std::string label, double a_inf, double b, double beta, double kappa, double alpha = 1.0,
                              double gap_factor = 1.0) {
    CurveSpec c;
    c.label = std::move(label);
    c.a_inf = a_inf;
    c.b = b;
    c.beta = beta;
    c.overfit_gap = gap_factor * b;
    c.gamma = beta;
    c.kappa = kappa;
    c.alpha = alpha;
    return c;
}

/// Raises the overfitting gap until the curve satisfies fitness up to n.
inline void ensure_fitness(CurveSpec& c, std::int64_t n) {
    for (int k = 0; k < 200 && !satisfies_fitness(c, CurveSpec::kMinProbeSize, n); ++k) c.overfit_gap = std::max(1e-3, c.overfit_gap * 1.25);
    if (!satisfies_fitness(c, CurveSpec::kMinProbeSize, n)) throw std::logic_error("could not make curve '" + c.label + "' fit");
}

inline void check_instance(const SyntheticInstance& inst) {
    for (const auto& c : inst.configs) {
        c.validate();
        if (!satisfies_fitness(c, CurveSpec::kMinProbeSize, inst.train_size))
            throw std::logic_error("generated curve '" + c.label + "' violates fitness");
    }
}

/// The best configuration learns slowly and needs a large sample before its lower
/// bound clears the others; the rest learn fast, sit 3.5-13.5 points lower and are
/// settled within a few thousand samples.
inline SyntheticInstance paper_shaped(std::uint64_t seed, std::size_t n, std::int64_t train_size,
                                      std::int64_t test_size) {
    if (n < 2) throw std::invalid_argument("paper_shaped needs n >= 2");
    std::mt19937_64 rng(derive_seed({seed, 0x9a9e}));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SyntheticInstance inst;
    inst.name = "paper_shaped_" + std::to_string(seed) + "_n" + std::to_string(n);
    inst.train_size = train_size;
    inst.test_size = test_size;

    const double a_best = 0.90 + 0.05 * u01(rng);
    const std::size_t best_pos = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double kappa = 0.5 + 1.5 * u01(rng);
        if (i == best_pos) {
            inst.configs.push_back(smooth_curve("slow-best", a_best, 1.8 + 0.6 * u01(rng), 0.3, kappa, 1.0, 1.0));
        } else {
            const double gap = 0.035 + 0.1 * u01(rng);
            inst.configs.push_back(smooth_curve("fast-" + std::to_string(i + 1), a_best - gap, 0.5 + 1.0 * u01(rng),
                                                0.5, kappa, 1.0, 1.0));
        }
    }
    check_instance(inst);
    return inst;
}

/// Several configurations within a few points of each other at the top; used
/// for the epsilon-guarantee and epsilon-sweep checks.
inline SyntheticInstance close_race(std::uint64_t seed, std::size_t n, std::int64_t train_size = 2'000'000,
                                    std::int64_t test_size = 1'000'000) {
    if (n < 2) throw std::invalid_argument("close_race needs n >= 2");
    std::mt19937_64 rng(derive_seed({seed, 0xc105e}));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SyntheticInstance inst;
    inst.name = "close_race_" + std::to_string(seed) + "_n" + std::to_string(n);
    inst.train_size = train_size;
    inst.test_size = test_size;
    const double top = 0.85 + 0.08 * u01(rng);
    for (std::size_t i = 0; i < n; ++i) {
        // Gaps below the top: a few within 0-3 points, the rest 3-20 points.
        const double gap = i < 4 ? 0.03 * u01(rng) : 0.03 + 0.17 * u01(rng);
        const double b = 0.3 + 1.2 * u01(rng);
        const double beta = 0.35 + 0.25 * u01(rng);
        inst.configs.push_back(smooth_curve("race-" + std::to_string(i + 1), top - gap, b, beta,
                                            0.5 + 1.5 * u01(rng), 1.0, 1.0 + u01(rng)));
    }
    std::shuffle(inst.configs.begin(), inst.configs.end(), rng);
    check_instance(inst);
    return inst;
}

/// One configuration is the best on full data but looks worse than every rival
/// at small sizes: its accuracy is held flat over [plateau_low, plateau_high]
/// while rivals start higher and level off 3+ points below it. Its training
/// accuracy stays high throughout, so the upper bound keeps it alive.
inline SyntheticInstance adversarial_plateau(std::uint64_t seed, std::size_t n = 8,
                                             std::int64_t train_size = 1'000'000,
                                             std::int64_t test_size = 500'000) {
    if (n < 2) throw std::invalid_argument("adversarial_plateau needs n >= 2");
    std::mt19937_64 rng(derive_seed({seed, 0xad7e}));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SyntheticInstance inst;
    inst.name = "adversarial_plateau_" + std::to_string(seed) + "_n" + std::to_string(n);
    inst.train_size = train_size;
    inst.test_size = test_size;

    const double best_final = 0.91 + 0.03 * u01(rng);
    const double rival_top = best_final - 0.035 - 0.02 * u01(rng);
    const double spacing = 0.03 + 0.01 * u01(rng);
    const auto best_pos = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
    std::vector<std::size_t> rank(n - 1);
    for (std::size_t k = 0; k < rank.size(); ++k) rank[k] = k;
    std::shuffle(rank.begin(), rank.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
        const double kappa = 0.8 + 0.4 * u01(rng);
        if (i == best_pos) {
            CurveSpec c;
            c.label = "plateau-best";
            c.a_inf = best_final + 0.002;
            c.beta = 0.5;
            // Flat at the value reached at 500 samples until 32k-64k samples.
            const double early = rival_top - 0.06 - 0.03 * u01(rng);
            c.b = (c.a_inf - early) * std::sqrt(500.0);
            c.plateau = Plateau{500, static_cast<std::int64_t>(32'000 + 32'000 * u01(rng))};
            c.overfit_gap = 0.5;
            c.gamma = 0.15;
            c.kappa = kappa;
            ensure_fitness(c, train_size);
            inst.configs.push_back(c);
        } else {
            // Fast learners that keep their relative order at every size.
            const double a = rival_top - spacing * static_cast<double>(rank[i < best_pos ? i : i - 1]);
            auto c = smooth_curve("rival-" + std::to_string(i + 1), a, 0.3 + 0.2 * u01(rng), 0.5, kappa, 1.0, 1.0);
            // Rivals overfit by a couple of points even on large samples.
            c.overfit_gap = 0.2 + 0.1 * u01(rng);
            c.gamma = 0.2;
            inst.configs.push_back(c);
        }
    }
    check_instance(inst);
    return inst;
}

/// Skewed optimal sample sizes: the best configuration needs around a million
/// samples, the rest are settled near 16k. Costs differ per configuration.
inline SyntheticInstance skewed(std::uint64_t seed, std::size_t n, std::int64_t train_size = 4'000'000,
                                std::int64_t test_size = 2'000'000) {
    if (n < 2) throw std::invalid_argument("skewed needs n >= 2");
    std::mt19937_64 rng(derive_seed({seed, 0x5ce3}));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    SyntheticInstance inst;
    inst.name = "skewed_" + std::to_string(seed) + "_n" + std::to_string(n);
    inst.train_size = train_size;
    inst.test_size = test_size;
    const double a_best = 0.92 + 0.03 * u01(rng);
    const auto best_pos = static_cast<std::size_t>(u01(rng) * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (i == best_pos) {
            inst.configs.push_back(smooth_curve("slow-best", a_best, 2.0, 0.3, 0.25 + 0.25 * u01(rng), 1.0, 1.0));
        } else {
            const double kappa = 2.0 * std::exp(std::log(4.0) * u01(rng));
            inst.configs.push_back(smooth_curve("fast-" + std::to_string(i + 1), a_best - 0.1 - 0.1 * u01(rng),
                                                0.3 + 0.5 * u01(rng), 0.5, kappa, 1.0, 1.0));
        }
    }
    check_instance(inst);
    return inst;
}

}  // namespace abc::instances
