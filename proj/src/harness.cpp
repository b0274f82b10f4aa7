#include "tunebench/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tunebench/parallel.hpp"
#include "tunebench/report.hpp"
#include "tunebench/rng.hpp"
#include "tunebench/text_io.hpp"

namespace tunebench {

namespace {

// Seed-derivation tags; distinct per purpose so streams never collide.
constexpr std::uint64_t kTagTuningLandscape = 0x544c;
constexpr std::uint64_t kTagComparisonLandscape = 0x434c;
constexpr std::uint64_t kTagRaceRun = 0x5252;
constexpr std::uint64_t kTagComparisonRun = 0x4352;
constexpr std::uint64_t kTagCandidates = 0x4353;

// Sweep values are snapped to a 1e-9 grid so fractional steps produce the
// nominal values (0.1 + 2*0.2 prints as 0.5, not 0.500000000000001).
double snap(double v) { return std::round(v * 1e9) / 1e9; }

std::string value_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::uint64_t cell_seed(std::uint64_t master, std::uint64_t tag, const std::string& characteristic,
                        double value) {
    std::uint64_t h = hash_u64(master, tag);
    h = hash_str(h, characteristic);
    return hash_f64(h, value);
}

// Hash of every plan field that affects computed artifacts (not the
// algorithm/characteristic filters); guards cached files against reuse
// under a different plan.
std::uint64_t plan_fingerprint(const ExperimentPlan& plan) {
    std::uint64_t h = 0x706c616eu;
    h = hash_u64(h, plan.master_seed);
    h = hash_u64(h, static_cast<std::uint64_t>(plan.scaled_tuning_landscapes()));
    h = hash_u64(h, static_cast<std::uint64_t>(plan.scaled_comparison_landscapes()));
    h = hash_u64(h, static_cast<std::uint64_t>(plan.scaled_repetitions()));
    h = hash_u64(h, static_cast<std::uint64_t>(plan.budget.max_evaluations));
    h = hash_f64(h, plan.race_alpha);
    h = hash_u64(h, static_cast<std::uint64_t>(plan.race_min_blocks));
    h = hash_u64(h, plan.max_candidates);
    h = hash_u64(h, static_cast<std::uint64_t>(plan.race_budget_multiplier));
    return h;
}

std::string fingerprint_hex(const ExperimentPlan& plan) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(plan_fingerprint(plan)));
    return buf;
}

int scaled_count(int count, double scale) {
    const double scaled = std::ceil(static_cast<double>(count) * scale);
    return std::max(1, static_cast<int>(scaled));
}

std::filesystem::path tuned_config_path(const std::filesystem::path& store_dir,
                                        AlgorithmId algorithm, const std::string& characteristic,
                                        double value) {
    return store_dir / to_string(algorithm) / characteristic / (value_label(value) + ".cfg");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        parts.push_back(item.substr(begin, end - begin + 1));
    }
    return parts;
}

} // namespace

const std::vector<CharacteristicSpec>& characteristics() {
    static const std::vector<CharacteristicSpec> specs = {
        {"local_optima", 0, 9, 1, 3},
        {"ratio", 0.1, 0.9, 0.2, 0.5},
        {"dimensions", 1, 10, 1, 2},
        {"boundary", 10, 100, 10, 30},
        {"smoothness", 10, 100, 10, 15},
    };
    return specs;
}

const CharacteristicSpec& characteristic(const std::string& name) {
    for (const auto& c : characteristics())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown characteristic: " + name);
}

std::vector<double> sweep_values(const CharacteristicSpec& spec) {
    if (!(spec.step > 0.0)) throw std::invalid_argument("sweep_values: step must be positive");
    const int count = static_cast<int>(std::floor((spec.max - spec.min) / spec.step + 0.5)) + 1;
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) values.push_back(snap(spec.min + i * spec.step));
    return values;
}

int ExperimentPlan::scaled_tuning_landscapes() const {
    return scaled_count(tuning_landscapes_per_value, scale);
}
int ExperimentPlan::scaled_comparison_landscapes() const {
    return scaled_count(comparison_landscapes_per_value, scale);
}
int ExperimentPlan::scaled_repetitions() const {
    return scaled_count(repetitions_per_landscape, scale);
}

void ExperimentPlan::validate() const {
    if (algorithms.empty()) throw std::invalid_argument("plan: no algorithms");
    if (characteristic_names.empty()) throw std::invalid_argument("plan: no characteristics");
    for (const auto& name : characteristic_names) characteristic(name); // throws on unknown
    if (tuning_landscapes_per_value < 1 || comparison_landscapes_per_value < 1 ||
        repetitions_per_landscape < 1)
        throw std::invalid_argument("plan: counts must be >= 1");
    if (budget.max_evaluations < 1) throw std::invalid_argument("plan: budget must be >= 1");
    if (!(scale > 0.0)) throw std::invalid_argument("plan: scale must be > 0");
    if (!(race_alpha >= 0.0 && race_alpha < 1.0))
        throw std::invalid_argument("plan: alpha must be in [0,1)");
    if (race_min_blocks < 2) throw std::invalid_argument("plan: min_blocks must be >= 2");
    if (max_candidates < 1) throw std::invalid_argument("plan: max_candidates must be >= 1");
    if (race_budget_multiplier < race_min_blocks)
        throw std::invalid_argument("plan: race budget multiplier below min_blocks");
}

ExperimentPlan plan_from_text(const std::string& text) {
    ExperimentPlan plan;
    std::istringstream in(text);
    std::string line;
    std::string section = "experiment";
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);

        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section != "experiment" && section != "race")
                throw std::invalid_argument("plan: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plan: expected key = value on line " +
                                        std::to_string(line_no));
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos) return std::string{};
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("plan: empty key or value on line " +
                                        std::to_string(line_no));

        auto numeric = [&](auto parse) {
            try {
                return parse(value);
            } catch (const std::exception&) {
                throw std::invalid_argument("plan: bad value for " + key + " on line " +
                                            std::to_string(line_no));
            }
        };
        auto as_double = [&] { return numeric([](const std::string& s) { return std::stod(s); }); };
        auto as_int = [&] { return numeric([](const std::string& s) { return std::stoi(s); }); };
        auto as_i64 = [&] { return numeric([](const std::string& s) { return std::stoll(s); }); };
        auto as_u64 = [&] { return numeric([](const std::string& s) { return std::stoull(s); }); };

        if (section == "experiment") {
            if (key == "algorithms") {
                plan.algorithms.clear();
                for (const auto& name : split_list(value))
                    plan.algorithms.push_back(algorithm_from_string(name));
            } else if (key == "characteristics") {
                plan.characteristic_names = split_list(value);
            } else if (key == "scale") {
                plan.scale = as_double();
            } else if (key == "master_seed") {
                plan.master_seed = as_u64();
            } else if (key == "budget") {
                plan.budget.max_evaluations = as_i64();
            } else if (key == "tuning_landscapes_per_value") {
                plan.tuning_landscapes_per_value = as_int();
            } else if (key == "comparison_landscapes_per_value") {
                plan.comparison_landscapes_per_value = as_int();
            } else if (key == "repetitions_per_landscape") {
                plan.repetitions_per_landscape = as_int();
            } else {
                throw std::invalid_argument("plan: unknown key " + key);
            }
        } else { // race
            if (key == "alpha") {
                plan.race_alpha = as_double();
            } else if (key == "min_blocks") {
                plan.race_min_blocks = as_int();
            } else if (key == "max_candidates") {
                plan.max_candidates = static_cast<std::size_t>(as_i64());
            } else if (key == "budget_multiplier") {
                plan.race_budget_multiplier = as_i64();
            } else {
                throw std::invalid_argument("plan: unknown key " + key);
            }
        }
    }
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
    return plan_from_text(read_file(path));
}

LandscapeSpec landscape_spec_for(const std::string& name, double value, std::uint64_t master_seed,
                                 int index, bool tuning) {
    const auto& spec = characteristic(name); // validates the name
    const auto values = sweep_values(spec);
    const double snapped = snap(value);
    if (std::find(values.begin(), values.end(), snapped) == values.end())
        throw std::invalid_argument("landscape_spec_for: value outside the sweep of " + name);

    LandscapeSpec out;
    for (const auto& c : characteristics()) {
        const double v = c.name == name ? snapped : c.default_value;
        if (c.name == "local_optima") out.num_local_optima = static_cast<int>(v);
        else if (c.name == "ratio") out.ratio = v;
        else if (c.name == "dimensions") out.dimensions = static_cast<int>(v);
        else if (c.name == "boundary") out.boundary = v;
        else if (c.name == "smoothness") out.smoothness = v;
    }
    const std::uint64_t tag = tuning ? kTagTuningLandscape : kTagComparisonLandscape;
    out.seed = hash_u64(cell_seed(master_seed, tag, name, snapped),
                        static_cast<std::uint64_t>(index));
    return out;
}

std::uint64_t comparison_run_seed(std::uint64_t master_seed, AlgorithmId algorithm,
                                  const std::string& characteristic, double value,
                                  int landscape_index, int repetition) {
    std::uint64_t h = cell_seed(master_seed, kTagComparisonRun, characteristic, snap(value));
    h = hash_str(h, to_string(algorithm));
    h = hash_u64(h, static_cast<std::uint64_t>(landscape_index));
    return hash_u64(h, static_cast<std::uint64_t>(repetition));
}

Configuration tune_for_value(AlgorithmId algorithm, const std::string& name, double value,
                             const ExperimentPlan& plan, const std::filesystem::path& store_dir,
                             int jobs, const RunFn& runner, const ProgressFn& progress) {
    plan.validate();
    const double snapped = snap(value);
    const auto path = tuned_config_path(store_dir, algorithm, name, snapped);
    const std::string fingerprint = fingerprint_hex(plan);

    if (std::filesystem::exists(path)) {
        const std::string text = read_file(path);
        if (text.find("# fingerprint " + fingerprint + "\n") != std::string::npos) {
            Configuration cached = configuration_from_text(text);
            if (cached.algorithm == algorithm) return cached;
        }
    }

    const auto candidates = enumerate_candidates(
        algorithm, parameter_space(algorithm), plan.max_candidates,
        hash_str(hash_u64(plan.master_seed, kTagCandidates), to_string(algorithm)));

    RaceOutcome outcome;
    if (candidates.candidates.size() == 1) {
        outcome.winner = candidates.candidates.front();
        outcome.survivors_at_end = 1;
    } else {
        const int tuning_count = plan.scaled_tuning_landscapes();
        std::vector<Landscape> tuning_set;
        tuning_set.reserve(static_cast<std::size_t>(tuning_count));
        for (int i = 0; i < tuning_count; ++i)
            tuning_set.push_back(generate(landscape_spec_for(name, snapped, plan.master_seed, i,
                                                             /*tuning=*/true)));

        // Endless stream cycling the tuning set with a fresh seed per block;
        // the race budget provides termination.
        const std::uint64_t block_base = cell_seed(plan.master_seed, kTagRaceRun, name, snapped);
        const std::uint64_t alg_base = hash_str(block_base, to_string(algorithm));
        int block = 0;
        InstanceStream stream = [&tuning_set, alg_base, block]() mutable {
            Instance instance;
            instance.landscape = &tuning_set[static_cast<std::size_t>(block) % tuning_set.size()];
            instance.seed = hash_u64(alg_base, static_cast<std::uint64_t>(block));
            ++block;
            return std::optional<Instance>(instance);
        };

        RaceOptions options;
        options.budget = plan.budget;
        options.race_budget =
            plan.race_budget_multiplier * static_cast<std::int64_t>(candidates.candidates.size());
        options.alpha = plan.race_alpha;
        options.min_blocks = plan.race_min_blocks;
        options.jobs = jobs;
        outcome = frace(candidates, stream, options, runner);
    }

    std::ostringstream out;
    out << "# fingerprint " << fingerprint << "\n";
    out << "# characteristic " << name << "\n";
    out << "# value " << value_label(snapped) << "\n";
    out << "# candidates " << candidates.candidates.size() << "\n";
    out << "# blocks_used " << outcome.blocks_used << "\n";
    out << "# survivors " << outcome.survivors_at_end << "\n";
    out << "# runs " << outcome.runs_done << "\n";
    for (const auto& [block, dropped] : outcome.elimination_log)
        out << "# eliminated block=" << block << " count=" << dropped.size() << "\n";
    out << to_text(outcome.winner);
    write_file_atomic(path, out.str());

    if (progress) {
        std::ostringstream msg;
        msg << "[tune] " << to_string(algorithm) << " " << name << "=" << value_label(snapped)
            << " winner=" << outcome.winner.id() << " blocks=" << outcome.blocks_used
            << " survivors=" << outcome.survivors_at_end << " runs=" << outcome.runs_done;
        progress(msg.str());
    }
    return outcome.winner;
}

namespace {

std::filesystem::path cell_path(const std::filesystem::path& out_dir, AlgorithmId algorithm,
                                const std::string& characteristic) {
    return out_dir / "cells" / (to_string(algorithm) + "_" + characteristic + ".cell");
}

struct CellData {
    std::vector<double> values;
    std::vector<double> untuned_avg;
    std::vector<double> tuned_avg;
    int n_runs = 0;
};

std::optional<CellData> load_cell(const std::filesystem::path& path,
                                  const std::string& fingerprint) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    std::istringstream in(read_file(path));
    std::string tag, fp;
    int version = 0;
    in >> tag >> version >> fp;
    if (tag != "tunebench-cell" || version != 1 || fp != fingerprint) return std::nullopt;
    std::size_t count = 0;
    in >> tag >> count;
    if (tag != "values" || !in) return std::nullopt;
    CellData cell;
    in >> tag >> cell.n_runs;
    if (tag != "runs_per_value" || !in) return std::nullopt;
    for (std::size_t i = 0; i < count; ++i) {
        double value = 0.0, untuned = 0.0, tuned = 0.0;
        in >> tag >> value >> untuned >> tuned;
        if (tag != "value" || !in) return std::nullopt;
        cell.values.push_back(value);
        cell.untuned_avg.push_back(untuned);
        cell.tuned_avg.push_back(tuned);
    }
    return cell;
}

void save_cell(const std::filesystem::path& path, const std::string& fingerprint,
               const CellData& cell) {
    std::ostringstream out;
    out << "tunebench-cell 1 " << fingerprint << "\n";
    out << "values " << cell.values.size() << "\n";
    out << "runs_per_value " << cell.n_runs << "\n";
    for (std::size_t i = 0; i < cell.values.size(); ++i)
        out << "value " << fmt17(cell.values[i]) << " " << fmt17(cell.untuned_avg[i]) << " "
            << fmt17(cell.tuned_avg[i]) << "\n";
    write_file_atomic(path, out.str());
}

std::pair<RobustnessSummary, RobustnessSummary> summaries_from_cell(AlgorithmId algorithm,
                                                                    const std::string& name,
                                                                    const CellData& cell) {
    RobustnessSummary untuned, tuned;
    untuned.characteristic = tuned.characteristic = name;
    untuned.algorithm = tuned.algorithm = algorithm;
    untuned.tuned = false;
    tuned.tuned = true;
    for (std::size_t i = 0; i < cell.values.size(); ++i) {
        untuned.per_value.push_back({name, cell.values[i], algorithm, false, cell.untuned_avg[i],
                                     cell.n_runs});
        tuned.per_value.push_back({name, cell.values[i], algorithm, true, cell.tuned_avg[i],
                                   cell.n_runs});
    }
    std::tie(untuned.mu, untuned.sigma) = robustness(cell.untuned_avg);
    std::tie(tuned.mu, tuned.sigma) = robustness(cell.tuned_avg);
    return {std::move(untuned), std::move(tuned)};
}

} // namespace

std::pair<RobustnessSummary, RobustnessSummary> compare(AlgorithmId algorithm,
                                                        const std::string& name,
                                                        const ExperimentPlan& plan,
                                                        const std::filesystem::path& out_dir,
                                                        int jobs, const RunFn& runner,
                                                        const ProgressFn& progress,
                                                        RunSink* sink) {
    plan.validate();
    const RunFn run = runner ? runner : default_runner();
    const auto values = sweep_values(characteristic(name));
    const int n_landscapes = plan.scaled_comparison_landscapes();
    const int repetitions = plan.scaled_repetitions();
    const int runs_per_flag = n_landscapes * repetitions;

    CellData cell;
    cell.n_runs = runs_per_flag;
    for (const double value : values) {
        const Configuration tuned_config =
            tune_for_value(algorithm, name, value, plan, out_dir / "tuned", jobs, runner, progress);
        const Configuration untuned_config = default_configuration(algorithm);

        std::vector<Landscape> landscapes;
        landscapes.reserve(static_cast<std::size_t>(n_landscapes));
        for (int j = 0; j < n_landscapes; ++j)
            landscapes.push_back(generate(landscape_spec_for(name, value, plan.master_seed, j,
                                                             /*tuning=*/false)));

        // Flat (flag, landscape, repetition) grid; tuned and untuned arms
        // share (landscape, seed) so every run is paired.
        const std::size_t total = static_cast<std::size_t>(runs_per_flag) * 2;
        std::vector<RunRecord> records(total);
        parallel_for(total, jobs, [&](std::size_t idx) {
            const bool tuned = idx >= static_cast<std::size_t>(runs_per_flag);
            const int within = static_cast<int>(idx % static_cast<std::size_t>(runs_per_flag));
            const int j = within / repetitions;
            const int r = within % repetitions;
            const std::uint64_t seed =
                comparison_run_seed(plan.master_seed, algorithm, name, value, j, r);
            records[idx] = run(algorithm, tuned ? tuned_config : untuned_config,
                               landscapes[static_cast<std::size_t>(j)], plan.budget, seed);
        });

        double untuned_sum = 0.0, tuned_sum = 0.0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            const bool tuned = idx >= static_cast<std::size_t>(runs_per_flag);
            (tuned ? tuned_sum : untuned_sum) += records[idx].error;
            if (sink) sink->consume(records[idx], tuned);
        }
        cell.values.push_back(value);
        cell.untuned_avg.push_back(untuned_sum / runs_per_flag);
        cell.tuned_avg.push_back(tuned_sum / runs_per_flag);

        if (progress) {
            std::ostringstream msg;
            msg << "[compare] " << to_string(algorithm) << " " << name << "="
                << value_label(value) << " untuned=" << fmt_sig(cell.untuned_avg.back(), 6)
                << " tuned=" << fmt_sig(cell.tuned_avg.back(), 6);
            progress(msg.str());
        }
    }

    save_cell(cell_path(out_dir, algorithm, name), fingerprint_hex(plan), cell);
    return summaries_from_cell(algorithm, name, cell);
}

std::vector<RobustnessSummary> full_experiment(const ExperimentPlan& plan,
                                               const std::filesystem::path& out_dir, int jobs,
                                               const RunFn& runner, const ProgressFn& progress,
                                               RunSink* sink) {
    plan.validate();
    const std::string fingerprint = fingerprint_hex(plan);
    std::vector<RobustnessSummary> rows;
    for (const AlgorithmId algorithm : plan.algorithms) {
        for (const auto& name : plan.characteristic_names) {
            std::pair<RobustnessSummary, RobustnessSummary> pair;
            const auto cached = load_cell(cell_path(out_dir, algorithm, name), fingerprint);
            if (cached && !sink) {
                pair = summaries_from_cell(algorithm, name, *cached);
            } else {
                pair = compare(algorithm, name, plan, out_dir, jobs, runner, progress, sink);
            }
            rows.push_back(std::move(pair.first));
            rows.push_back(std::move(pair.second));
        }
    }
    emit_summary_csv(rows, out_dir / "summary.csv");
    return rows;
}

} // namespace tunebench
