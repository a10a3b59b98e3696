// Real learners on an in-memory dataset: label = 1 when a noisy linear score is
// positive. Costs are wall-clock seconds.
#include <iostream>
#include <memory>
#include <random>

#include "abc/abc.hpp"

int main() {
    auto data = std::make_shared<abc::Dataset>();
    data->cols = 5;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    const double w[] = {1.5, -2.0, 0.5, 0.0, 1.0};
    for (std::size_t i = 0; i < 60'000; ++i) {
        double score = 0.0;
        for (double wj : w) {
            const double x = g(rng);
            data->features.push_back(x);
            score += wj * x;
        }
        data->labels.push_back(score + 0.3 * g(rng) > 0.0 ? 1 : 0);
        ++data->rows;
    }
    abc::min_max_normalize(*data);

    std::vector<abc::LearnerSpec> learners;
    for (auto [lr, name] : {std::pair{0.5, "sgd lr=0.5"}, {0.05, "sgd lr=0.05"}, {0.005, "sgd lr=0.005"}}) {
        abc::LearnerSpec s;
        s.label = name;
        s.kind = abc::LearnerKind::LogisticRegressionSgd;
        s.learning_rate = lr;
        s.epochs = 5;
        learners.push_back(s);
    }
    abc::LearnerSpec stump, majority;
    stump.label = "stump";
    stump.kind = abc::LearnerKind::DecisionStump;
    majority.label = "majority";
    learners.push_back(stump);
    learners.push_back(majority);

    abc::LearnerBackend backend(abc::DatasetHandle(data, 0.3, 1), learners);
    auto p = abc::bind_params(abc::RunParams{}, backend);
    const auto res = abc::run_abc(backend, p, abc::SchedulerKind::GradientCI);
    const auto report = abc::make_abc_report(res, backend, p, abc::SchedulerKind::GradientCI);
    std::cout << abc::format_report(report);
    return 0;
}
