#include "internal.hpp"

namespace tunebench::detail {

namespace {

constexpr double kInitialSigmaFraction = 0.1;
constexpr double kOneFifthFactor = 0.85;

struct EsIndividual {
    std::vector<double> x;
    double fitness = -1.0;
};

} // namespace

// (mu, lambda) evolution strategy with isotropic Gaussian mutation. One
// global step size adapts by the 1/5 success rule each generation; comma
// selection when lambda >= mu, plus selection otherwise.
void run_es(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const std::size_t mu = static_cast<std::size_t>(cfg.at_int("population"));
    const std::size_t lambda = static_cast<std::size_t>(cfg.at_int("children"));
    const bool comma = lambda >= mu;
    const std::size_t dims = static_cast<std::size_t>(ev.dimensions());
    double sigma = kInitialSigmaFraction * ev.boundary();
    const double sigma_min = 1e-12 * ev.boundary();

    std::vector<EsIndividual> parents(mu);
    for (auto& p : parents) {
        p.x = ev.random_point(rng);
        p.fitness = ev.evaluate(p.x);
    }

    std::vector<EsIndividual> children(lambda);
    auto by_fitness_desc = [](const EsIndividual& a, const EsIndividual& b) {
        return a.fitness > b.fitness;
    };

    while (true) {
        std::size_t successes = 0;
        for (auto& child : children) {
            const EsIndividual& parent = parents[rng.index(mu)];
            child.x.resize(dims);
            for (std::size_t d = 0; d < dims; ++d)
                child.x[d] = parent.x[d] + sigma * rng.normal();
            child.fitness = ev.evaluate(child.x);
            if (child.fitness > parent.fitness) ++successes;
        }

        if (comma) {
            std::stable_sort(children.begin(), children.end(), by_fitness_desc);
            std::copy(children.begin(), children.begin() + static_cast<std::ptrdiff_t>(mu),
                      parents.begin());
        } else {
            std::vector<EsIndividual> pool;
            pool.reserve(mu + lambda);
            pool.insert(pool.end(), parents.begin(), parents.end());
            pool.insert(pool.end(), children.begin(), children.end());
            std::stable_sort(pool.begin(), pool.end(), by_fitness_desc);
            pool.resize(mu);
            parents = std::move(pool);
        }

        const double success_ratio =
            static_cast<double>(successes) / static_cast<double>(lambda);
        if (success_ratio > 0.2)
            sigma /= kOneFifthFactor;
        else if (success_ratio < 0.2)
            sigma *= kOneFifthFactor;
        sigma = std::clamp(sigma, sigma_min, ev.boundary());
    }
}

} // namespace tunebench::detail
