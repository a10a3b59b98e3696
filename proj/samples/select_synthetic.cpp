// Picks a configuration on a generated synthetic instance and compares the
// choice and its cost with training every configuration on all data.
#include <iostream>

#include "abc/abc.hpp"

int main() {
    const auto inst = abc::instances::paper_shaped(/*seed=*/3, /*n=*/10, 4'000'000, 1'000'000);
    abc::SyntheticBackend backend(inst);

    abc::RunParams p;  // epsilon 0.01, delta 0.5, sizes 1000/2000, c = 2
    p.seed = 42;
    p = abc::bind_params(p, backend);

    const auto res = abc::run_abc(backend, p, abc::SchedulerKind::GradientCI);
    const auto full = abc::full_run(backend);

    std::cout << "selected " << res.selected << " (" << backend.label(res.selected) << "), real accuracy "
              << inst.real_accuracy(res.selected) << '\n';
    std::cout << "best     " << full.best << " (" << backend.label(full.best) << "), real accuracy "
              << full.accuracies[full.best - 1] << '\n';
    std::cout << "cost " << res.trace.wall_cost_total << " vs full run " << full.total_cost << " ("
              << full.total_cost / res.trace.wall_cost_total << "x), " << res.trace.rounds.size() << " probes\n";

    const auto audit = abc::audit_trace(res.trace, p);
    std::cout << "audit: " << (audit.ok() ? "ok" : "violations") << '\n';
    return audit.ok() ? 0 : 1;
}
