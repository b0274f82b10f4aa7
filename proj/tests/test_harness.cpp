#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include "test_support.hpp"
#include "tunebench/harness.hpp"
#include "tunebench/text_io.hpp"

using namespace tunebench;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

// Error is determined by the configuration alone: |first parameter - 0.3|,
// plus a tiny seed jitter. Thread-safe run counting.
RunFn synthetic_runner(std::atomic<int>* counter = nullptr) {
    return [counter](AlgorithmId id, const Configuration& cfg, const Landscape& land, Budget,
                     std::uint64_t seed) {
        RunRecord record;
        record.algorithm = id;
        record.config = cfg;
        record.landscape_id = land.id();
        record.seed = seed;
        const double param = cfg.values.begin()->second;
        record.error = std::fabs(param - 0.3) + 1e-7 * static_cast<double>(seed % 97);
        record.best_fitness = 1.0 - record.error;
        record.best_x = {0.0};
        record.evaluations_used = 5;
        if (counter) counter->fetch_add(1);
        return record;
    };
}

ExperimentPlan tiny_plan() {
    ExperimentPlan plan;
    plan.algorithms = {AlgorithmId::SHC};
    plan.characteristic_names = {"ratio"};
    plan.scale = 0.02; // 1 tuning landscape, 2 comparison landscapes, 2 reps
    plan.master_seed = 77;
    plan.budget = Budget{500};
    return plan;
}

} // namespace

TEST_CASE("sweep values follow the characteristic table") {
    CHECK(sweep_values(characteristic("local_optima")) ==
          std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(sweep_values(characteristic("ratio")) ==
          std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9});
    CHECK(sweep_values(characteristic("smoothness")) ==
          std::vector<double>{10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
    CHECK(sweep_values(characteristic("dimensions")).size() == 10);
    CHECK(sweep_values(characteristic("boundary")).size() == 10);
    CHECK_THROWS_AS(characteristic("bogus"), std::invalid_argument);

    // defaults from the table
    CHECK(characteristic("local_optima").default_value == 3);
    CHECK(characteristic("ratio").default_value == 0.5);
    CHECK(characteristic("dimensions").default_value == 2);
    CHECK(characteristic("boundary").default_value == 30);
    CHECK(characteristic("smoothness").default_value == 15);
}

TEST_CASE("landscape specs pin the swept value and keep defaults elsewhere") {
    const auto smooth = landscape_spec_for("smoothness", 40, 1, 0, false);
    CHECK(smooth.num_local_optima == 3);
    CHECK(smooth.ratio == 0.5);
    CHECK(smooth.dimensions == 2);
    CHECK(smooth.boundary == 30);
    CHECK(smooth.smoothness == 40);

    const auto dims = landscape_spec_for("dimensions", 10, 1, 0, false);
    CHECK(dims.dimensions == 10);
    CHECK(dims.smoothness == 15);

    const auto none = landscape_spec_for("local_optima", 0, 1, 0, false);
    CHECK(generate(none).components().size() == 1);

    CHECK_THROWS_AS(landscape_spec_for("smoothness", 41, 1, 0, false), std::invalid_argument);

    // tuning and comparison pools are disjoint; different indices differ
    const auto tune0 = landscape_spec_for("ratio", 0.3, 1, 0, true);
    const auto cmp0 = landscape_spec_for("ratio", 0.3, 1, 0, false);
    const auto cmp1 = landscape_spec_for("ratio", 0.3, 1, 1, false);
    CHECK(tune0.seed != cmp0.seed);
    CHECK(cmp0.seed != cmp1.seed);
}

TEST_CASE("comparison run seeds pair the arms and separate everything else") {
    const auto s = comparison_run_seed(9, AlgorithmId::GA, "ratio", 0.3, 2, 5);
    CHECK(s == comparison_run_seed(9, AlgorithmId::GA, "ratio", 0.3, 2, 5));
    CHECK(s != comparison_run_seed(9, AlgorithmId::GA, "ratio", 0.3, 2, 6));
    CHECK(s != comparison_run_seed(9, AlgorithmId::GA, "ratio", 0.3, 3, 5));
    CHECK(s != comparison_run_seed(9, AlgorithmId::GA, "ratio", 0.5, 2, 5));
    CHECK(s != comparison_run_seed(9, AlgorithmId::PSO, "ratio", 0.3, 2, 5));
    CHECK(s != comparison_run_seed(8, AlgorithmId::GA, "ratio", 0.3, 2, 5));
}

TEST_CASE("plan parsing: defaults, overrides, and errors") {
    const auto plan = plan_from_text("");
    CHECK(plan.algorithms.size() == 7);
    CHECK(plan.characteristic_names.size() == 5);
    CHECK(plan.scale == 0.1);
    CHECK(plan.budget.max_evaluations == 20000);
    CHECK(plan.tuning_landscapes_per_value == 5);
    CHECK(plan.comparison_landscapes_per_value == 100);
    CHECK(plan.repetitions_per_landscape == 100);
    CHECK(plan.race_alpha == 0.05);
    CHECK(plan.race_min_blocks == 5);
    CHECK(plan.max_candidates == 200);
    CHECK(plan.race_budget_multiplier == 40);

    const auto custom = plan_from_text(
        "# comment\n"
        "[experiment]\n"
        "algorithms = SHC, ES\n"
        "characteristics = ratio\n"
        "scale = 0.5\n"
        "master_seed = 123\n"
        "budget = 5000\n"
        "[race]\n"
        "alpha = 0.1\n"
        "min_blocks = 3\n"
        "max_candidates = 50\n"
        "budget_multiplier = 20\n");
    CHECK(custom.algorithms == std::vector<AlgorithmId>{AlgorithmId::SHC, AlgorithmId::ES});
    CHECK(custom.characteristic_names == std::vector<std::string>{"ratio"});
    CHECK(custom.scale == 0.5);
    CHECK(custom.master_seed == 123);
    CHECK(custom.budget.max_evaluations == 5000);
    CHECK(custom.race_alpha == 0.1);
    CHECK(custom.race_min_blocks == 3);
    CHECK(custom.max_candidates == 50);
    CHECK(custom.race_budget_multiplier == 20);

    CHECK_THROWS_AS(plan_from_text("[experiment]\nbogus = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(plan_from_text("[bogus]\n"), std::invalid_argument);
    CHECK_THROWS_AS(plan_from_text("[experiment]\nscale = fast\n"), std::invalid_argument);
    CHECK_THROWS_AS(plan_from_text("[experiment]\nscale\n"), std::invalid_argument);
    CHECK_THROWS_AS(plan_from_text("[experiment]\nalgorithms = XYZ\n"), std::invalid_argument);
    CHECK_THROWS_AS(plan_from_text("[experiment]\nscale = -1\n"), std::invalid_argument);
}

TEST_CASE("scaled counts round up and never drop below one") {
    ExperimentPlan plan;
    plan.scale = 0.1;
    CHECK(plan.scaled_tuning_landscapes() == 1);      // ceil(0.5)
    CHECK(plan.scaled_comparison_landscapes() == 10); // 100 * 0.1
    CHECK(plan.scaled_repetitions() == 10);
    plan.scale = 1.0;
    CHECK(plan.scaled_tuning_landscapes() == 5);
    CHECK(plan.scaled_comparison_landscapes() == 100);
    CHECK(plan.scaled_repetitions() == 100);
    plan.scale = 0.001;
    CHECK(plan.scaled_comparison_landscapes() == 1);
    CHECK(plan.scaled_repetitions() == 1);
}

TEST_CASE("tune_for_value finds the grid value nearest the synthetic optimum") {
    TempDir dir("tunebench-tune-test");
    const auto plan = tiny_plan();

    std::atomic<int> runs{0};
    const auto winner = tune_for_value(AlgorithmId::SHC, "ratio", 0.5, plan, dir.path, 2,
                                       synthetic_runner(&runs));
    CHECK(winner.at("neighborhood_fraction") == 0.25);
    CHECK(runs.load() > 0);

    // the winner is persisted and reused without re-racing
    const int after_first = runs.load();
    const auto cached = tune_for_value(AlgorithmId::SHC, "ratio", 0.5, plan, dir.path, 2,
                                       synthetic_runner(&runs));
    CHECK(cached == winner);
    CHECK(runs.load() == after_first);

    // a different plan fingerprint invalidates the cache
    auto other = plan;
    other.master_seed = 78;
    tune_for_value(AlgorithmId::SHC, "ratio", 0.5, other, dir.path, 2, synthetic_runner(&runs));
    CHECK(runs.load() > after_first);
}

TEST_CASE("compare pairs the arms run for run") {
    TempDir dir("tunebench-compare-test");
    const auto plan = tiny_plan();

    struct PairingSink : RunSink {
        std::multiset<std::pair<std::string, std::uint64_t>> keys[2];
        void consume(const RunRecord& record, bool tuned) override {
            keys[tuned ? 1 : 0].insert({record.landscape_id, record.seed});
        }
    } sink;

    const auto [untuned, tuned] =
        compare(AlgorithmId::SHC, "ratio", plan, dir.path, 2, synthetic_runner(), {}, &sink);

    CHECK(untuned.per_value.size() == 5);
    CHECK(tuned.per_value.size() == 5);
    CHECK(untuned.tuned == false);
    CHECK(tuned.tuned == true);
    const int runs_per_flag = plan.scaled_comparison_landscapes() * plan.scaled_repetitions() * 5;
    CHECK(static_cast<int>(sink.keys[0].size()) == runs_per_flag);
    CHECK(sink.keys[0] == sink.keys[1]); // identical (landscape, seed) grids
    for (const auto& v : untuned.per_value) CHECK(v.n_runs == 4);

    // synthetic errors: default SHC fraction 0.05 -> 0.25; tuned 0.25 -> 0.05
    CHECK(untuned.mu == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(tuned.mu == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("full_experiment emits one summary pair per cell and caches them") {
    TempDir dir("tunebench-full-test");
    auto plan = tiny_plan();
    plan.algorithms = {AlgorithmId::SHC, AlgorithmId::ES};

    std::atomic<int> runs{0};
    const auto rows = full_experiment(plan, dir.path, 2, synthetic_runner(&runs));
    CHECK(rows.size() == 4); // 2 algorithms x 1 characteristic x 2 arms
    CHECK(std::filesystem::exists(dir.path / "summary.csv"));
    const auto csv_first = read_file(dir.path / "summary.csv");

    // cached cells make the re-run free and byte-identical
    const int after_first = runs.load();
    const auto rows2 = full_experiment(plan, dir.path, 2, synthetic_runner(&runs));
    CHECK(runs.load() == after_first);
    CHECK(rows2.size() == rows.size());
    CHECK(read_file(dir.path / "summary.csv") == csv_first);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].mu == rows2[i].mu);
        CHECK(rows[i].sigma == rows2[i].sigma);
    }
}

TEST_CASE("a small real experiment runs end to end deterministically") {
    TempDir dir_a("tunebench-real-a");
    TempDir dir_b("tunebench-real-b");
    ExperimentPlan plan;
    plan.algorithms = {AlgorithmId::SHC};
    plan.characteristic_names = {"ratio"};
    plan.scale = 0.02;
    plan.master_seed = 404;
    plan.budget = Budget{800};
    plan.race_budget_multiplier = 8;

    const auto rows_a = full_experiment(plan, dir_a.path, 2);
    const auto rows_b = full_experiment(plan, dir_b.path, 2);
    REQUIRE(rows_a.size() == 2);
    for (std::size_t i = 0; i < rows_a.size(); ++i) {
        CHECK(rows_a[i].mu == rows_b[i].mu);
        CHECK(rows_a[i].sigma == rows_b[i].sigma);
    }
    CHECK(read_file(dir_a.path / "summary.csv") == read_file(dir_b.path / "summary.csv"));
    for (const auto& row : rows_a) {
        CHECK(row.mu >= 0.0);
        CHECK(row.mu <= 1.0);
        CHECK(row.sigma >= 0.0);
    }
}
