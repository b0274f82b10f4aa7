#include "internal.hpp"

namespace tunebench::detail {

namespace {

struct GaIndividual {
    std::vector<std::uint8_t> bits;
    double fitness = -1.0;
};

const GaIndividual& tournament(const std::vector<GaIndividual>& pop, Rng& rng) {
    const GaIndividual& a = pop[rng.index(pop.size())];
    const GaIndividual& b = pop[rng.index(pop.size())];
    return a.fitness >= b.fitness ? a : b;
}

} // namespace

// Plain binary decode: each `bits_per_var` group maps linearly onto
// [0, boundary], so the all-zero string decodes to the origin and the
// all-one string to the far corner.
std::vector<double> ga_decode(const std::vector<std::uint8_t>& bits, int bits_per_var, int dims,
                              double boundary) {
    std::vector<double> x(static_cast<std::size_t>(dims));
    const double max_value = static_cast<double>((std::uint64_t{1} << bits_per_var) - 1);
    for (int v = 0; v < dims; ++v) {
        std::uint64_t acc = 0;
        for (int b = 0; b < bits_per_var; ++b)
            acc = (acc << 1) | bits[static_cast<std::size_t>(v * bits_per_var + b)];
        x[static_cast<std::size_t>(v)] = boundary * static_cast<double>(acc) / max_value;
    }
    return x;
}

// Binary-coded genetic algorithm: size-2 tournament selection, one-point
// crossover, per-bit mutation, generational replacement keeping one elite.
// The mutation parameter scales the classic 1/(bits*dims) per-bit rate so a
// configuration carries across dimensionalities.
void run_ga(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng) {
    const int population = cfg.at_int("population");
    const int bits_per_var = cfg.at_int("bits");
    const double crossover = cfg.at("crossover");
    const std::size_t genome_len =
        static_cast<std::size_t>(bits_per_var) * static_cast<std::size_t>(ev.dimensions());
    const double mutation_rate =
        std::clamp(cfg.at("mutation") / static_cast<double>(genome_len), 0.0, 1.0);

    auto evaluate = [&](GaIndividual& ind) {
        auto x = ga_decode(ind.bits, bits_per_var, ev.dimensions(), ev.boundary());
        ind.fitness = ev.evaluate(x);
    };

    std::vector<GaIndividual> pop(static_cast<std::size_t>(population));
    for (auto& ind : pop) {
        ind.bits.resize(genome_len);
        for (auto& b : ind.bits) b = static_cast<std::uint8_t>(rng.index(2));
        evaluate(ind);
    }

    while (true) {
        const auto elite_it =
            std::max_element(pop.begin(), pop.end(),
                             [](const auto& a, const auto& b) { return a.fitness < b.fitness; });

        std::vector<GaIndividual> next;
        next.reserve(pop.size());
        next.push_back(*elite_it); // fitness already known, no re-evaluation
        while (next.size() < pop.size()) {
            const GaIndividual& p1 = tournament(pop, rng);
            const GaIndividual& p2 = tournament(pop, rng);
            GaIndividual child;
            child.bits = p1.bits;
            if (rng.chance(crossover)) {
                const std::size_t point = 1 + rng.index(genome_len - 1);
                std::copy(p2.bits.begin() + static_cast<std::ptrdiff_t>(point), p2.bits.end(),
                          child.bits.begin() + static_cast<std::ptrdiff_t>(point));
            }
            for (auto& b : child.bits)
                if (rng.chance(mutation_rate)) b ^= 1;
            evaluate(child);
            next.push_back(std::move(child));
        }
        pop = std::move(next);
    }
}

} // namespace tunebench::detail
