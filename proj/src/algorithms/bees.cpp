#include "internal.hpp"

namespace tunebench::detail {

namespace {

constexpr double kPatchShrink = 0.95;

struct Bee {
    std::vector<double> x;
    double fitness = -1.0;
};

} // namespace

// Bees algorithm: the best sites recruit forager bees within a patch that
// shrinks every generation, the remaining scouts resample the domain at
// random. Each site is replaced by the best of its recruits.
void run_bees(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const std::size_t scouts = static_cast<std::size_t>(cfg.at_int("scouts"));
    const std::size_t sites = std::min(static_cast<std::size_t>(cfg.at_int("sites")), scouts);
    const std::size_t elite_sites =
        std::min(static_cast<std::size_t>(cfg.at_int("elite_sites")), sites);
    const std::size_t bees_per_site = static_cast<std::size_t>(cfg.at_int("bees_per_site"));
    const std::size_t bees_per_elite = static_cast<std::size_t>(cfg.at_int("bees_per_elite"));
    double patch = cfg.at("patch_fraction") * ev.boundary();

    std::vector<Bee> pop(scouts);
    for (auto& bee : pop) {
        bee.x = ev.random_point(rng);
        bee.fitness = ev.evaluate(bee.x);
    }

    std::vector<double> forager(static_cast<std::size_t>(ev.dimensions()));
    while (true) {
        std::stable_sort(pop.begin(), pop.end(),
                         [](const Bee& a, const Bee& b) { return a.fitness > b.fitness; });

        std::vector<Bee> next;
        next.reserve(scouts);
        for (std::size_t s = 0; s < sites; ++s) {
            const std::size_t recruits = s < elite_sites ? bees_per_elite : bees_per_site;
            Bee best_recruit;
            for (std::size_t r = 0; r < recruits; ++r) {
                for (std::size_t d = 0; d < forager.size(); ++d)
                    forager[d] = pop[s].x[d] + rng.uniform(-patch, patch);
                const double f = ev.evaluate(forager);
                if (f > best_recruit.fitness) {
                    best_recruit.x = forager;
                    best_recruit.fitness = f;
                }
            }
            next.push_back(std::move(best_recruit));
        }
        for (std::size_t s = sites; s < scouts; ++s) {
            Bee scout;
            scout.x = ev.random_point(rng);
            scout.fitness = ev.evaluate(scout.x);
            next.push_back(std::move(scout));
        }
        pop = std::move(next);
        patch *= kPatchShrink;
    }
}

} // namespace tunebench::detail
