#include "tunebench/optimizers.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "algorithms/internal.hpp"
#include "tunebench/rng.hpp"
#include "tunebench/text_io.hpp"

namespace tunebench {

std::string to_string(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::BFOA: return "BFOA";
        case AlgorithmId::BEES: return "BEES";
        case AlgorithmId::ES: return "ES";
        case AlgorithmId::GA: return "GA";
        case AlgorithmId::HS: return "HS";
        case AlgorithmId::PSO: return "PSO";
        case AlgorithmId::SHC: return "SHC";
    }
    throw std::invalid_argument("unknown algorithm id");
}

AlgorithmId algorithm_from_string(const std::string& name) {
    for (AlgorithmId id : kAllAlgorithms)
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown algorithm: " + name);
}

namespace {

ParameterDescriptor int_param(std::string name, double lower, double upper, double dflt,
                              std::vector<double> grid) {
    return {std::move(name), ParamKind::Integer, lower, upper, dflt, std::move(grid)};
}

ParameterDescriptor real_param(std::string name, double lower, double upper, double dflt,
                               std::vector<double> grid) {
    return {std::move(name), ParamKind::Real, lower, upper, dflt, std::move(grid)};
}

std::vector<ParameterDescriptor> build_space(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::BFOA:
            return {
                int_param("population", 2, 200, 50, {25, 50}),
                real_param("step_fraction", 0.001, 1.0, 0.1, {0.01, 0.05, 0.1, 0.3}),
                int_param("chemotactic_steps", 1, 1000, 100, {50, 100}),
                int_param("swim_length", 0, 20, 4, {2, 4}),
                int_param("reproduction_steps", 1, 100, 4, {2, 4}),
                int_param("elimination_events", 1, 50, 2, {1, 2}),
                real_param("elimination_prob", 0.0, 1.0, 0.25, {0.1, 0.25}),
                real_param("attract_weight", 0.0, 5.0, 0.1, {0.0, 0.1}),
                real_param("attract_width", 0.001, 100.0, 0.2, {0.1, 0.2}),
                real_param("repel_weight", 0.0, 5.0, 0.1, {0.0, 0.1}),
            };
        case AlgorithmId::BEES:
            return {
                int_param("scouts", 2, 200, 45, {20, 45, 90}),
                int_param("sites", 1, 50, 3, {2, 3, 5}),
                int_param("elite_sites", 1, 50, 1, {1, 2}),
                int_param("bees_per_site", 1, 100, 2, {2, 4}),
                int_param("bees_per_elite", 1, 100, 7, {4, 7}),
                real_param("patch_fraction", 0.001, 1.0, 0.1, {0.05, 0.1, 0.25}),
            };
        case AlgorithmId::ES:
            return {
                int_param("population", 1, 500, 30, {10, 30, 50, 100}),
                int_param("children", 1, 500, 20, {10, 20, 50, 100}),
            };
        case AlgorithmId::GA:
            return {
                int_param("population", 4, 500, 100, {20, 50, 100, 200}),
                int_param("bits", 4, 32, 16, {8, 16, 24}),
                real_param("crossover", 0.0, 1.0, 0.98, {0.6, 0.7, 0.8, 0.9, 0.98}),
                // Per-bit rate as a multiple of 1/(bits * dimensions); 1.0 is
                // the classic one-flip-per-genome setting.
                real_param("mutation", 0.0, 10.0, 1.0, {0.2, 0.5, 1.0, 2.0, 5.0}),
            };
        case AlgorithmId::HS:
            return {
                int_param("memory", 1, 200, 20, {5, 10, 20, 50}),
                real_param("consideration", 0.0, 1.0, 0.95, {0.5, 0.7, 0.9, 0.95}),
                real_param("adjustment", 0.0, 1.0, 0.7, {0.3, 0.5, 0.7}),
                real_param("range_fraction", 0.001, 1.0, 0.05, {0.01, 0.05, 0.1, 0.25}),
            };
        case AlgorithmId::PSO:
            return {
                int_param("population", 2, 500, 30, {10, 20, 30, 50}),
                real_param("max_velocity_fraction", 0.001, 2.0, 0.1, {0.05, 0.1, 0.25, 0.5, 1.0}),
                real_param("personal_bias", 0.0, 4.0, 2.0, {0.5, 1.0, 2.0}),
                real_param("global_bias", 0.0, 4.0, 2.0, {0.5, 1.0, 2.0}),
            };
        case AlgorithmId::SHC:
            return {
                real_param("neighborhood_fraction", 0.001, 1.0, 0.05,
                           {0.01, 0.05, 0.1, 0.25, 0.5}),
            };
    }
    throw std::invalid_argument("unknown algorithm id");
}

} // namespace

const std::vector<ParameterDescriptor>& parameter_space(AlgorithmId id) {
    static const std::array<std::vector<ParameterDescriptor>, 7> spaces = [] {
        std::array<std::vector<ParameterDescriptor>, 7> s;
        for (std::size_t i = 0; i < kAllAlgorithms.size(); ++i)
            s[i] = build_space(kAllAlgorithms[i]);
        return s;
    }();
    for (std::size_t i = 0; i < kAllAlgorithms.size(); ++i)
        if (kAllAlgorithms[i] == id) return spaces[i];
    throw std::invalid_argument("unknown algorithm id");
}

Configuration default_configuration(AlgorithmId id) {
    Configuration cfg;
    cfg.algorithm = id;
    for (const auto& p : parameter_space(id)) cfg.values[p.name] = p.default_value;
    return cfg;
}

Configuration random_configuration(AlgorithmId id, Rng& rng) {
    Configuration cfg;
    cfg.algorithm = id;
    for (const auto& p : parameter_space(id)) {
        double v = rng.uniform(p.lower, p.upper);
        if (p.kind == ParamKind::Integer) v = std::round(v);
        cfg.values[p.name] = std::clamp(v, p.lower, p.upper);
    }
    return cfg;
}

double Configuration::at(const std::string& name) const {
    const auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("missing parameter: " + name);
    return it->second;
}

int Configuration::at_int(const std::string& name) const {
    return static_cast<int>(std::llround(at(name)));
}

void Configuration::validate() const {
    const auto& space = parameter_space(algorithm);
    if (values.size() != space.size())
        throw std::invalid_argument("configuration has wrong parameter count for " +
                                    to_string(algorithm));
    for (const auto& p : space) {
        const double v = at(p.name);
        if (!std::isfinite(v) || v < p.lower || v > p.upper)
            throw std::invalid_argument("parameter out of range: " + p.name);
        if (p.kind == ParamKind::Integer && v != std::floor(v))
            throw std::invalid_argument("parameter must be integral: " + p.name);
    }
}

std::string Configuration::id() const {
    std::uint64_t h = hash_str(0x636667u, to_string(algorithm));
    for (const auto& [name, value] : values) {
        h = hash_str(h, name);
        h = hash_f64(h, value);
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_text(const Configuration& config) {
    std::ostringstream out;
    out << "algorithm " << to_string(config.algorithm) << "\n";
    for (const auto& [name, value] : config.values)
        out << name << " " << fmt17(value) << "\n";
    return out.str();
}

Configuration configuration_from_text(const std::string& text) {
    Configuration cfg;
    std::istringstream in(text);
    std::string line;
    bool have_algorithm = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == "algorithm") {
            std::string name;
            fields >> name;
            cfg.algorithm = algorithm_from_string(name);
            have_algorithm = true;
        } else {
            double value = 0.0;
            fields >> value;
            if (!fields) throw std::runtime_error("configuration parse: bad line: " + line);
            cfg.values[key] = value;
        }
    }
    if (!have_algorithm) throw std::runtime_error("configuration parse: missing algorithm line");
    cfg.validate();
    return cfg;
}

std::string run_csv_line(const RunRecord& r) {
    std::ostringstream out;
    out << to_string(r.algorithm) << "," << r.config.id() << "," << r.landscape_id << ","
        << r.seed << "," << fmt17(r.best_fitness) << "," << fmt17(r.error) << ","
        << r.evaluations_used;
    return out.str();
}

std::int64_t min_evaluations(AlgorithmId id, const Configuration& config) {
    switch (id) {
        case AlgorithmId::BFOA: return 2 * config.at_int("population");
        case AlgorithmId::BEES: {
            const std::int64_t scouts = config.at_int("scouts");
            const std::int64_t sites = std::min<std::int64_t>(config.at_int("sites"), scouts);
            const std::int64_t elites = std::min<std::int64_t>(config.at_int("elite_sites"), sites);
            const std::int64_t recruited = elites * config.at_int("bees_per_elite") +
                                           (sites - elites) * config.at_int("bees_per_site");
            return scouts + recruited + (scouts - sites);
        }
        case AlgorithmId::ES: return config.at_int("population") + config.at_int("children");
        case AlgorithmId::GA: return 2 * config.at_int("population") - 1;
        case AlgorithmId::HS: return config.at_int("memory") + 1;
        case AlgorithmId::PSO: return 2 * config.at_int("population");
        case AlgorithmId::SHC: return 2;
    }
    throw std::invalid_argument("unknown algorithm id");
}

RunRecord optimize(AlgorithmId id, const Configuration& config, const Landscape& landscape,
                   Budget budget, std::uint64_t seed) {
    return optimize(id, config, landscape, budget, seed, EvalObserver{});
}

RunRecord optimize(AlgorithmId id, const Configuration& config, const Landscape& landscape,
                   Budget budget, std::uint64_t seed, const EvalObserver& observer) {
    if (config.algorithm != id)
        throw std::invalid_argument("configuration is for a different algorithm");
    config.validate();
    if (budget.max_evaluations <= 0) throw std::invalid_argument("budget must be positive");
    if (budget.max_evaluations < min_evaluations(id, config))
        throw std::invalid_argument("budget smaller than one iteration of " + to_string(id));

    detail::BudgetedEvaluator ev(landscape, budget.max_evaluations, &observer);
    Rng rng(seed);
    try {
        switch (id) {
            case AlgorithmId::BFOA: detail::run_bfoa(config, ev, rng); break;
            case AlgorithmId::BEES: detail::run_bees(config, ev, rng); break;
            case AlgorithmId::ES: detail::run_es(config, ev, rng); break;
            case AlgorithmId::GA: detail::run_ga(config, ev, rng); break;
            case AlgorithmId::HS: detail::run_hs(config, ev, rng); break;
            case AlgorithmId::PSO: detail::run_pso(config, ev, rng); break;
            case AlgorithmId::SHC: detail::run_shc(config, ev, rng); break;
        }
    } catch (const detail::BudgetExhausted&) {
        // normal termination
    }

    RunRecord record;
    record.algorithm = id;
    record.config = config;
    record.landscape_id = landscape.id();
    record.seed = seed;
    record.best_x = ev.best_x();
    record.best_fitness = ev.best_fitness();
    record.error = error_of(landscape, record.best_fitness);
    record.evaluations_used = ev.used();
    return record;
}

} // namespace tunebench
