#include "internal.hpp"

namespace tunebench::detail {

// Harmony search. Each step composes one new harmony per dimension: with
// probability `consideration` the value comes from a random memory entry
// (pitch-adjusted with probability `adjustment`), otherwise it is drawn
// uniformly from the domain. The new harmony replaces the worst memory
// entry when it improves on it.
void run_hs(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const int memory_size = cfg.at_int("memory");
    const double consideration = cfg.at("consideration");
    const double adjustment = cfg.at("adjustment");
    const double bandwidth = cfg.at("range_fraction") * ev.boundary();

    std::vector<std::vector<double>> memory;
    std::vector<double> fitness;
    memory.reserve(static_cast<std::size_t>(memory_size));
    for (int i = 0; i < memory_size; ++i) {
        memory.push_back(ev.random_point(rng));
        fitness.push_back(ev.evaluate(memory.back()));
    }

    std::vector<double> harmony(static_cast<std::size_t>(ev.dimensions()));
    while (true) {
        for (std::size_t d = 0; d < harmony.size(); ++d) {
            if (rng.chance(consideration)) {
                double v = memory[rng.index(memory.size())][d];
                if (rng.chance(adjustment)) v += rng.uniform(-bandwidth, bandwidth);
                harmony[d] = v;
            } else {
                harmony[d] = rng.uniform(0.0, ev.boundary());
            }
        }
        const double f = ev.evaluate(harmony);
        const std::size_t worst = static_cast<std::size_t>(
            std::min_element(fitness.begin(), fitness.end()) - fitness.begin());
        if (f > fitness[worst]) {
            memory[worst] = harmony;
            fitness[worst] = f;
        }
    }
}

} // namespace tunebench::detail
