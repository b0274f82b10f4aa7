#include "internal.hpp"

namespace tunebench::detail {

// Global-best particle swarm. Velocities are clamped component-wise to
// max_velocity_fraction * boundary after each update; positions are clamped
// into the domain by the evaluator.
void run_pso(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const int population = cfg.at_int("population");
    const double vmax = cfg.at("max_velocity_fraction") * ev.boundary();
    const double personal_bias = cfg.at("personal_bias");
    const double global_bias = cfg.at("global_bias");
    const std::size_t dims = static_cast<std::size_t>(ev.dimensions());

    std::vector<std::vector<double>> position(static_cast<std::size_t>(population));
    std::vector<std::vector<double>> velocity(static_cast<std::size_t>(population));
    std::vector<std::vector<double>> personal_best(static_cast<std::size_t>(population));
    std::vector<double> personal_fitness(static_cast<std::size_t>(population));
    std::vector<double> global_best;
    double global_fitness = -1.0;

    for (std::size_t i = 0; i < position.size(); ++i) {
        position[i] = ev.random_point(rng);
        velocity[i].resize(dims);
        for (auto& v : velocity[i]) v = rng.uniform(-vmax, vmax);
        personal_fitness[i] = ev.evaluate(position[i]);
        personal_best[i] = position[i];
        if (personal_fitness[i] > global_fitness) {
            global_fitness = personal_fitness[i];
            global_best = position[i];
        }
    }

    while (true) {
        for (std::size_t i = 0; i < position.size(); ++i) {
            for (std::size_t d = 0; d < dims; ++d) {
                double v = velocity[i][d] +
                           personal_bias * rng.uniform() * (personal_best[i][d] - position[i][d]) +
                           global_bias * rng.uniform() * (global_best[d] - position[i][d]);
                velocity[i][d] = std::clamp(v, -vmax, vmax);
                position[i][d] += velocity[i][d];
            }
            const double f = ev.evaluate(position[i]);
            if (f > personal_fitness[i]) {
                personal_fitness[i] = f;
                personal_best[i] = position[i];
            }
            if (f > global_fitness) {
                global_fitness = f;
                global_best = position[i];
            }
        }
    }
}

} // namespace tunebench::detail
