#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <span>

#include "../src/algorithms/internal.hpp"
#include "test_support.hpp"
#include "tunebench/landscape.hpp"
#include "tunebench/optimizers.hpp"
#include "tunebench/rng.hpp"

using namespace tunebench;

namespace {

Landscape default_landscape(std::uint64_t seed = 7) {
    return generate(LandscapeSpec{3, 0.5, 2, 30.0, 15.0, seed});
}

Landscape smooth_landscape(std::uint64_t seed) {
    return generate(LandscapeSpec{0, 0.5, 2, 30.0, 10.0, seed});
}

bool records_equal(const RunRecord& a, const RunRecord& b) {
    return a.best_x == b.best_x && a.best_fitness == b.best_fitness &&
           a.evaluations_used == b.evaluations_used && a.error == b.error;
}

} // namespace

TEST_CASE("parameter spaces have the contracted shapes") {
    const std::map<AlgorithmId, std::size_t> expected = {
        {AlgorithmId::BFOA, 10}, {AlgorithmId::BEES, 6}, {AlgorithmId::ES, 2},
        {AlgorithmId::GA, 4},    {AlgorithmId::HS, 4},   {AlgorithmId::PSO, 4},
        {AlgorithmId::SHC, 1},
    };
    for (const auto& [id, count] : expected) {
        const auto& space = parameter_space(id);
        CHECK(space.size() == count);
        for (const auto& p : space) {
            CHECK(p.lower <= p.default_value);
            CHECK(p.default_value <= p.upper);
            CHECK(!p.grid.empty());
            for (double g : p.grid) {
                CHECK(g >= p.lower);
                CHECK(g <= p.upper);
            }
        }
    }
    CHECK(parameter_space(AlgorithmId::SHC)[0].name == "neighborhood_fraction");
}

TEST_CASE("default configurations match the fixed table") {
    const auto pso = default_configuration(AlgorithmId::PSO);
    CHECK(pso.at("population") == 30);
    CHECK(pso.at("max_velocity_fraction") == 0.1);
    CHECK(pso.at("personal_bias") == 2.0);
    CHECK(pso.at("global_bias") == 2.0);

    const auto shc = default_configuration(AlgorithmId::SHC);
    CHECK(shc.at("neighborhood_fraction") == 0.05);

    const auto es = default_configuration(AlgorithmId::ES);
    CHECK(es.at("population") == 30);
    CHECK(es.at("children") == 20);

    for (AlgorithmId id : kAllAlgorithms) CHECK_NOTHROW(default_configuration(id).validate());
}

TEST_CASE("configuration validation") {
    auto cfg = default_configuration(AlgorithmId::PSO);
    CHECK_NOTHROW(cfg.validate());

    auto missing = cfg;
    missing.values.erase("population");
    CHECK_THROWS_AS(missing.validate(), std::invalid_argument);

    auto out_of_range = cfg;
    out_of_range.values["population"] = 1e9;
    CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);

    auto fractional = cfg;
    fractional.values["population"] = 30.5;
    CHECK_THROWS_AS(fractional.validate(), std::invalid_argument);

    auto extra = cfg;
    extra.values["bogus"] = 1.0;
    CHECK_THROWS_AS(extra.validate(), std::invalid_argument);
}

TEST_CASE("configuration text round-trip and id stability") {
    for (AlgorithmId id : kAllAlgorithms) {
        const auto cfg = default_configuration(id);
        const auto back = configuration_from_text(to_text(cfg));
        CHECK(back == cfg);
        CHECK(back.id() == cfg.id());
    }
    auto a = default_configuration(AlgorithmId::SHC);
    auto b = a;
    b.values["neighborhood_fraction"] = 0.5;
    CHECK(a.id() != b.id());
    CHECK_THROWS(configuration_from_text("neighborhood_fraction 0.5\n"));
}

TEST_CASE("optimize is deterministic and internally consistent") {
    const auto land = default_landscape();
    for (AlgorithmId id : {AlgorithmId::SHC, AlgorithmId::PSO, AlgorithmId::BFOA}) {
        const auto cfg = default_configuration(id);
        const auto a = optimize(id, cfg, land, Budget{4000}, 11);
        const auto b = optimize(id, cfg, land, Budget{4000}, 11);
        CHECK(records_equal(a, b));
        const auto c = optimize(id, cfg, land, Budget{4000}, 12);
        CHECK_FALSE(records_equal(a, c)); // different seed explores differently
        CHECK(a.best_fitness == land.evaluate(a.best_x));
        CHECK(a.error == 1.0 - a.best_fitness);
        CHECK(a.landscape_id == land.id());
    }
}

TEST_CASE("every algorithm respects the budget, stays in the domain, and tracks the best") {
    const auto land = default_landscape(3);
    Rng cfg_rng(2024);
    for (AlgorithmId id : kAllAlgorithms) {
        for (int trial = 0; trial < 3; ++trial) {
            const Configuration cfg =
                trial == 0 ? default_configuration(id) : random_configuration(id, cfg_rng);
            const Budget budget{trial == 2 ? 1500 : 6000};
            std::int64_t calls = 0;
            double running_best = -1.0;
            bool in_domain = true;
            bool monotone = true;
            const auto record = optimize(id, cfg, land, budget, 99 + trial,
                                         [&](std::span<const double> x, double f) {
                                             ++calls;
                                             for (double c : x)
                                                 if (!(c >= 0.0 && c <= 30.0)) in_domain = false;
                                             if (f > running_best) running_best = f;
                                             if (running_best < 0) monotone = false;
                                         });
            CHECK(calls == record.evaluations_used);
            CHECK(record.evaluations_used <= budget.max_evaluations);
            CHECK(in_domain);
            CHECK(monotone);
            CHECK(record.best_fitness == running_best);
            CHECK(record.error >= 0.0);
            CHECK(record.error <= 1.0);
        }
    }
}

TEST_CASE("budget below one iteration is rejected") {
    const auto land = default_landscape();
    CHECK_THROWS_AS(optimize(AlgorithmId::ES, default_configuration(AlgorithmId::ES), land,
                             Budget{49}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize(AlgorithmId::GA, default_configuration(AlgorithmId::GA), land,
                             Budget{100}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimize(AlgorithmId::SHC, default_configuration(AlgorithmId::PSO), land,
                             Budget{1000}, 1),
                    std::invalid_argument);
    for (AlgorithmId id : kAllAlgorithms) {
        const auto cfg = default_configuration(id);
        CHECK_NOTHROW(optimize(id, cfg, land, Budget{min_evaluations(id, cfg)}, 1));
    }
}

TEST_CASE("GA decoding endpoints") {
    const int bits = 16, dims = 2;
    const std::vector<std::uint8_t> zeros(bits * dims, 0);
    const std::vector<std::uint8_t> ones(bits * dims, 1);
    CHECK(detail::ga_decode(zeros, bits, dims, 30.0) == std::vector<double>{0.0, 0.0});
    CHECK(detail::ga_decode(ones, bits, dims, 30.0) == std::vector<double>{30.0, 30.0});
    // single set bit in the low position of the first variable
    std::vector<std::uint8_t> low = zeros;
    low[bits - 1] = 1;
    CHECK(detail::ga_decode(low, bits, dims, 30.0)[0] == doctest::Approx(30.0 / 65535.0));
}

TEST_CASE("HS with zero consideration ignores the adjustment parameters") {
    const auto land = default_landscape(5);
    auto a = default_configuration(AlgorithmId::HS);
    a.values["consideration"] = 0.0;
    a.values["adjustment"] = 0.1;
    a.values["range_fraction"] = 0.01;
    auto b = a;
    b.values["adjustment"] = 0.9;
    b.values["range_fraction"] = 0.5;
    const auto ra = optimize(AlgorithmId::HS, a, land, Budget{3000}, 77);
    const auto rb = optimize(AlgorithmId::HS, b, land, Budget{3000}, 77);
    CHECK(records_equal(ra, rb));
}

TEST_CASE("PSO velocity clamp bounds per-step movement") {
    const auto land = default_landscape(9);
    auto cfg = default_configuration(AlgorithmId::PSO);
    const double vmax_fraction = 0.1;
    cfg.values["max_velocity_fraction"] = vmax_fraction;
    const int population = 30;
    const double vmax = vmax_fraction * 30.0;

    std::vector<std::vector<double>> points;
    optimize(AlgorithmId::PSO, cfg, land, Budget{3000}, 5,
             [&](std::span<const double> x, double) {
                 points.emplace_back(x.begin(), x.end());
             });
    // evaluations come in particle order, so positions of particle p are at
    // indices p, p+population, p+2*population, ...
    for (std::size_t i = static_cast<std::size_t>(population); i < points.size(); ++i) {
        const auto& prev = points[i - static_cast<std::size_t>(population)];
        for (std::size_t d = 0; d < prev.size(); ++d)
            CHECK(std::fabs(points[i][d] - prev[d]) <= vmax + 1e-12);
    }
}

TEST_CASE("SHC with a wide neighborhood beats random sampling") {
    const Budget budget{20000};
    auto cfg = default_configuration(AlgorithmId::SHC);
    cfg.values["neighborhood_fraction"] = 0.5;
    double shc_total = 0.0;
    double random_total = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto land = default_landscape(1000 + seed);
        shc_total += optimize(AlgorithmId::SHC, cfg, land, budget, seed).error;
        random_total += testing::random_sampling_error(land, budget.max_evaluations, seed);
    }
    CHECK(shc_total / 20.0 < random_total / 20.0);
}

TEST_CASE("every algorithm dominates random sampling on smooth single-optimum landscapes") {
    const Budget budget{20000};
    std::vector<double> random_errors;
    std::vector<Landscape> lands;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        lands.push_back(smooth_landscape(500 + seed));
        random_errors.push_back(
            testing::random_sampling_error(lands.back(), budget.max_evaluations, seed));
    }
    const double random_mean =
        std::accumulate(random_errors.begin(), random_errors.end(), 0.0) / 20.0;
    for (AlgorithmId id : kAllAlgorithms) {
        const auto cfg = default_configuration(id);
        double total = 0.0;
        for (std::uint64_t seed = 0; seed < 20; ++seed)
            total += optimize(id, cfg, lands[seed], budget, seed).error;
        INFO(to_string(id));
        CHECK(total / 20.0 <= random_mean);
    }
}

TEST_CASE("random configurations are valid and runnable") {
    const auto land = default_landscape(13);
    Rng rng(31337);
    for (AlgorithmId id : kAllAlgorithms) {
        for (int i = 0; i < 20; ++i) {
            const auto cfg = random_configuration(id, rng);
            CHECK_NOTHROW(cfg.validate());
            CHECK(min_evaluations(id, cfg) <= 20000);
        }
    }
}

TEST_CASE("run CSV line layout") {
    const auto land = default_landscape();
    const auto record = optimize(AlgorithmId::SHC, default_configuration(AlgorithmId::SHC), land,
                                 Budget{100}, 4);
    const auto line = run_csv_line(record);
    CHECK(testing::count_occurrences(line, ",") == 6);
    CHECK(line.find("SHC,") == 0);
    CHECK(line.find(land.id()) != std::string::npos);
}
