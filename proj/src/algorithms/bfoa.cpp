#include "internal.hpp"

#include <cmath>

namespace tunebench::detail {

namespace {

struct Bacterium {
    std::vector<double> x;
    double cost = 1.0;   // 1 - fitness, lower is better
    double health = 0.0; // accumulated cost over a chemotaxis phase
};

// Cell-to-cell swarming term. Attraction and repulsion share one width, so
// a single kernel sum weighted by (repel - attract) gives both effects.
double interaction(const std::vector<double>& x, const std::vector<Bacterium>& cells,
                   double weight_diff, double width) {
    if (weight_diff == 0.0) return 0.0;
    double kernel = 0.0;
    for (const auto& other : cells) {
        double d2 = 0.0;
        for (std::size_t d = 0; d < x.size(); ++d) {
            const double diff = x[d] - other.x[d];
            d2 += diff * diff;
        }
        kernel += std::exp(-width * d2);
    }
    return weight_diff * kernel;
}

void random_unit_direction(std::vector<double>& dir, Rng& rng) {
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& c : dir) {
            c = rng.uniform(-1.0, 1.0);
            norm += c * c;
        }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& c : dir) c /= norm;
}

} // namespace

// Bacterial foraging: nested elimination-dispersal / reproduction /
// chemotaxis loops. A chemotactic step tumbles in a fresh random direction
// and keeps swimming along it while the swarming-augmented cost improves,
// up to swim_length extra steps. Reproduction keeps the healthier half of
// the population; elimination-dispersal teleports bacteria at random.
void run_bfoa(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const std::size_t population = static_cast<std::size_t>(cfg.at_int("population"));
    const double step = cfg.at("step_fraction") * ev.boundary();
    const int chem_steps = cfg.at_int("chemotactic_steps");
    const int swim_length = cfg.at_int("swim_length");
    const int repro_steps = cfg.at_int("reproduction_steps");
    const int elim_events = cfg.at_int("elimination_events");
    const double elim_prob = cfg.at("elimination_prob");
    const double attract_weight = cfg.at("attract_weight");
    const double width = cfg.at("attract_width"); // repulsion width is tied to this
    const double weight_diff = cfg.at("repel_weight") - attract_weight;

    std::vector<Bacterium> cells(population);
    for (auto& cell : cells) {
        cell.x = ev.random_point(rng);
        cell.cost = 1.0 - ev.evaluate(cell.x);
    }

    std::vector<double> dir(static_cast<std::size_t>(ev.dimensions()));
    for (int ell = 0; ell < elim_events; ++ell) {
        for (int k = 0; k < repro_steps; ++k) {
            for (auto& cell : cells) cell.health = 0.0;
            for (int j = 0; j < chem_steps; ++j) {
                for (auto& cell : cells) {
                    double last = cell.cost + interaction(cell.x, cells, weight_diff, width);
                    random_unit_direction(dir, rng);
                    for (std::size_t d = 0; d < dir.size(); ++d) cell.x[d] += step * dir[d];
                    cell.cost = 1.0 - ev.evaluate(cell.x);
                    double current = cell.cost + interaction(cell.x, cells, weight_diff, width);
                    for (int m = 0; m < swim_length && current < last; ++m) {
                        last = current;
                        for (std::size_t d = 0; d < dir.size(); ++d) cell.x[d] += step * dir[d];
                        cell.cost = 1.0 - ev.evaluate(cell.x);
                        current = cell.cost + interaction(cell.x, cells, weight_diff, width);
                    }
                    cell.health += current;
                }
            }
            // Reproduction: healthier (lower accumulated cost) half survives
            // and is duplicated in place of the rest.
            std::stable_sort(cells.begin(), cells.end(),
                             [](const Bacterium& a, const Bacterium& b) {
                                 return a.health < b.health;
                             });
            const std::size_t keep = (population + 1) / 2;
            for (std::size_t i = keep; i < population; ++i) cells[i] = cells[i - keep];
        }
        for (auto& cell : cells) {
            if (rng.chance(elim_prob)) {
                cell.x = ev.random_point(rng);
                cell.cost = 1.0 - ev.evaluate(cell.x);
            }
        }
    }
}

} // namespace tunebench::detail
