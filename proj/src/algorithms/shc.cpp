#include "internal.hpp"

namespace tunebench::detail {

// Stochastic hill climbing: proposals take a Gaussian step of scale
// `neighborhood` from the current point, accepted on strict improvement.
// The step is truncated to the domain (redrawn per coordinate) rather than
// clamped: tails still reach the whole domain from anywhere, and no
// evaluations pile up on the boundary.
void run_shc(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const double scale = cfg.at("neighborhood_fraction") * ev.boundary();
    const double boundary = ev.boundary();

    std::vector<double> current = ev.random_point(rng);
    double current_fitness = ev.evaluate(current);

    std::vector<double> candidate(current.size());
    while (true) {
        for (std::size_t d = 0; d < current.size(); ++d) {
            double c = current[d] + scale * rng.normal();
            for (int draw = 0; draw < 100 && !(c >= 0.0 && c <= boundary); ++draw)
                c = current[d] + scale * rng.normal();
            candidate[d] = std::clamp(c, 0.0, boundary);
        }
        const double f = ev.evaluate(candidate);
        if (f > current_fitness) {
            current = candidate;
            current_fitness = f;
        }
    }
}

} // namespace tunebench::detail
