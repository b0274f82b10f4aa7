#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tunebench/landscape.hpp"
#include "tunebench/optimizers.hpp"
#include "tunebench/stats.hpp"
#include "tunebench/tuner.hpp"

namespace tunebench {

// One sweepable landscape characteristic with its range and the default
// used while other characteristics are swept.
struct CharacteristicSpec {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;
    double default_value = 0.0;
};

// The five canonical characteristics, in sweep order.
const std::vector<CharacteristicSpec>& characteristics();
const CharacteristicSpec& characteristic(const std::string& name);

// min, min+step, ..., max inclusive.
std::vector<double> sweep_values(const CharacteristicSpec& spec);

struct ExperimentPlan {
    std::vector<AlgorithmId> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
    std::vector<std::string> characteristic_names{"local_optima", "ratio", "dimensions",
                                                  "boundary", "smoothness"};
    int tuning_landscapes_per_value = 5;
    int comparison_landscapes_per_value = 100;
    int repetitions_per_landscape = 100;
    Budget budget;
    std::uint64_t master_seed = 42;
    double scale = 0.1; // desk-scale default; 1.0 reproduces the full design
    double race_alpha = 0.05;
    int race_min_blocks = 5;
    std::size_t max_candidates = 200;
    std::int64_t race_budget_multiplier = 40; // total race runs per candidate

    int scaled_tuning_landscapes() const;
    int scaled_comparison_landscapes() const;
    int scaled_repetitions() const;
    void validate() const;
};

// Plan files are plain text: `key = value` lines under [experiment] and
// [race] sections, every field optional.
ExperimentPlan plan_from_text(const std::string& text);
ExperimentPlan load_plan(const std::filesystem::path& path);

// Landscape spec with `characteristic` pinned to `value`, everything else
// at the Table defaults; the seed is derived from (master_seed,
// characteristic, value, index) with tuning and comparison instances in
// disjoint index ranges.
LandscapeSpec landscape_spec_for(const std::string& characteristic, double value,
                                 std::uint64_t master_seed, int index, bool tuning);

// Seed for one comparison run; shared by the tuned and untuned arms so the
// two are paired on identical (landscape, seed).
std::uint64_t comparison_run_seed(std::uint64_t master_seed, AlgorithmId algorithm,
                                  const std::string& characteristic, double value,
                                  int landscape_index, int repetition);

using ProgressFn = std::function<void(const std::string&)>;

// Observes every comparison run, e.g. to append run CSVs.
class RunSink {
public:
    virtual ~RunSink() = default;
    virtual void consume(const RunRecord& record, bool tuned) = 0;
};

// Races the algorithm's candidate grid on the tuning landscapes for one
// (characteristic, value) cell. The winner is persisted under
// store_dir/<algorithm>/<characteristic>/<value>.cfg and reused on
// re-runs.
Configuration tune_for_value(AlgorithmId algorithm, const std::string& characteristic,
                             double value, const ExperimentPlan& plan,
                             const std::filesystem::path& store_dir, int jobs = 1,
                             const RunFn& runner = {}, const ProgressFn& progress = {});

// Paired untuned/tuned comparison across the characteristic's sweep;
// returns the two summary rows (untuned first).
std::pair<RobustnessSummary, RobustnessSummary> compare(
    AlgorithmId algorithm, const std::string& characteristic, const ExperimentPlan& plan,
    const std::filesystem::path& out_dir, int jobs = 1, const RunFn& runner = {},
    const ProgressFn& progress = {}, RunSink* sink = nullptr);

// The whole experiment: every algorithm x characteristic x {untuned,
// tuned}. Writes summary.csv under out_dir and caches tuned configurations
// and per-cell summaries so interrupted runs resume where they stopped.
std::vector<RobustnessSummary> full_experiment(const ExperimentPlan& plan,
                                               const std::filesystem::path& out_dir, int jobs = 1,
                                               const RunFn& runner = {},
                                               const ProgressFn& progress = {},
                                               RunSink* sink = nullptr);

} // namespace tunebench
