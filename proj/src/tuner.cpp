#include "tunebench/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "tunebench/parallel.hpp"
#include "tunebench/rng.hpp"
#include "tunebench/special_functions.hpp"

namespace tunebench {

namespace {

constexpr double kGoldenFraction = 0.6180339887498949; // 1/phi

// Mixed-radix decode of a product-space index into one configuration.
Configuration decode_candidate(AlgorithmId algorithm,
                               const std::vector<ParameterDescriptor>& space,
                               std::uint64_t index) {
    Configuration cfg;
    cfg.algorithm = algorithm;
    for (auto it = space.rbegin(); it != space.rend(); ++it) {
        const std::uint64_t radix = it->grid.size();
        cfg.values[it->name] = it->grid[static_cast<std::size_t>(index % radix)];
        index /= radix;
    }
    return cfg;
}

// Average ranks within one block; rank 1 goes to the lowest error.
std::vector<double> block_ranks(const std::vector<double>& row) {
    const std::size_t k = row.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

struct RankSummary {
    std::vector<double> rank_sums;
    double statistic = 0.0;
    double squared_rank_total = 0.0; // sum over all R_ij^2
};

RankSummary rank_summary(const std::vector<std::vector<double>>& errors) {
    const std::size_t blocks = errors.size();
    const std::size_t k = errors.front().size();
    RankSummary s;
    s.rank_sums.assign(k, 0.0);
    for (const auto& row : errors) {
        const auto ranks = block_ranks(row);
        for (std::size_t j = 0; j < k; ++j) {
            s.rank_sums[j] += ranks[j];
            s.squared_rank_total += ranks[j] * ranks[j];
        }
    }
    const double b = static_cast<double>(blocks);
    const double kd = static_cast<double>(k);
    const double center = (kd + 1.0) / 2.0;
    double spread = 0.0;
    for (double sum : s.rank_sums) {
        const double mean_rank = sum / b;
        spread += (mean_rank - center) * (mean_rank - center);
    }
    s.statistic = 12.0 * b / (kd * (kd + 1.0)) * spread;
    return s;
}

} // namespace

CandidateSet enumerate_candidates(AlgorithmId algorithm,
                                  const std::vector<ParameterDescriptor>& space,
                                  std::size_t max_candidates, std::uint64_t seed) {
    if (space.empty()) throw std::invalid_argument("enumerate_candidates: empty parameter space");
    double product = 1.0;
    for (const auto& p : space) {
        if (p.grid.empty())
            throw std::invalid_argument("enumerate_candidates: empty grid for " + p.name);
        product *= static_cast<double>(p.grid.size());
    }
    if (max_candidates == 0) throw std::invalid_argument("enumerate_candidates: zero cap");

    CandidateSet set;
    set.algorithm = algorithm;
    if (product <= static_cast<double>(max_candidates)) {
        const auto total = static_cast<std::uint64_t>(product);
        for (std::uint64_t i = 0; i < total; ++i)
            set.candidates.push_back(decode_candidate(algorithm, space, i));
    } else {
        // Golden-ratio (Kronecker) subsample of the product space; collisions
        // are resolved by probing the next free index.
        const auto total = static_cast<std::uint64_t>(product);
        Rng rng(seed);
        double phase = rng.uniform();
        std::set<std::uint64_t> chosen;
        for (std::size_t i = 0; i < max_candidates; ++i) {
            phase += kGoldenFraction;
            phase -= std::floor(phase);
            auto idx = static_cast<std::uint64_t>(phase * static_cast<double>(total));
            if (idx >= total) idx = total - 1;
            while (chosen.count(idx)) idx = (idx + 1) % total;
            chosen.insert(idx);
        }
        for (std::uint64_t idx : chosen)
            set.candidates.push_back(decode_candidate(algorithm, space, idx));
    }

    // Deduplicate while preserving order (grids may repeat values).
    std::vector<Configuration> unique;
    for (auto& c : set.candidates)
        if (std::find(unique.begin(), unique.end(), c) == unique.end())
            unique.push_back(std::move(c));
    set.candidates = std::move(unique);
    return set;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& errors) {
    if (errors.size() < 2) throw std::invalid_argument("friedman: need at least 2 blocks");
    const std::size_t k = errors.front().size();
    if (k < 2) throw std::invalid_argument("friedman: need at least 2 candidates");
    for (const auto& row : errors) {
        if (row.size() != k) throw std::invalid_argument("friedman: ragged matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("friedman: non-finite entry");
    }

    const auto summary = rank_summary(errors);
    FriedmanResult result;
    result.statistic = summary.statistic;
    result.p_value = chi_squared_sf(summary.statistic, static_cast<int>(k) - 1);
    result.mean_ranks.reserve(k);
    for (double sum : summary.rank_sums)
        result.mean_ranks.push_back(sum / static_cast<double>(errors.size()));
    return result;
}

std::vector<int> eliminate(RaceState& state, double alpha, int min_blocks) {
    if (state.blocks_done < min_blocks)
        throw std::invalid_argument("eliminate: fewer than min_blocks blocks done");
    if (state.surviving.size() < 2)
        throw std::invalid_argument("eliminate: fewer than 2 surviving candidates");

    // Errors of the surviving candidates over every block so far.
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(state.blocks_done));
    for (int b = 0; b < state.blocks_done; ++b) {
        auto& row = errors[static_cast<std::size_t>(b)];
        row.reserve(state.surviving.size());
        for (int j : state.surviving)
            row.push_back(state.results[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)]);
    }

    const auto summary = rank_summary(errors);
    const double b = static_cast<double>(state.blocks_done);
    const double k = static_cast<double>(state.surviving.size());
    const double p = chi_squared_sf(summary.statistic, static_cast<int>(k) - 1);
    if (!(alpha > 0.0) || p > alpha) return {};

    // Conover post-test: drop candidates whose rank-sum distance from the
    // best exceeds t * sqrt(V).
    const double correction = summary.squared_rank_total - b * k * (k + 1.0) * (k + 1.0) / 4.0;
    const double variance = 2.0 * b * (1.0 - summary.statistic / (b * (k - 1.0))) * correction /
                            ((b - 1.0) * (k - 1.0));
    const int dof = static_cast<int>((b - 1.0) * (k - 1.0));
    const double threshold =
        students_t_quantile(1.0 - alpha / 2.0, dof) * std::sqrt(std::max(0.0, variance));

    const std::size_t best = static_cast<std::size_t>(
        std::min_element(summary.rank_sums.begin(), summary.rank_sums.end()) -
        summary.rank_sums.begin());

    std::vector<int> kept;
    std::vector<int> dropped;
    for (std::size_t j = 0; j < state.surviving.size(); ++j) {
        if (j != best && summary.rank_sums[j] - summary.rank_sums[best] > threshold)
            dropped.push_back(state.surviving[j]);
        else
            kept.push_back(state.surviving[j]);
    }
    state.surviving = std::move(kept);
    return dropped;
}

RunFn default_runner() {
    return [](AlgorithmId id, const Configuration& cfg, const Landscape& landscape, Budget budget,
              std::uint64_t seed) { return optimize(id, cfg, landscape, budget, seed); };
}

RaceOutcome frace(const CandidateSet& candidates, const InstanceStream& instances,
                  const RaceOptions& options, const RunFn& runner) {
    const std::size_t k = candidates.candidates.size();
    if (k == 0) throw std::invalid_argument("frace: no candidates");
    const RunFn run = runner ? runner : default_runner();
    const std::int64_t race_budget =
        options.race_budget > 0 ? options.race_budget : 40 * static_cast<std::int64_t>(k);

    RaceOutcome outcome;
    outcome.winner = candidates.candidates.front();
    if (k == 1) {
        outcome.survivors_at_end = 1;
        return outcome;
    }
    if (race_budget < static_cast<std::int64_t>(k) * options.min_blocks)
        throw std::invalid_argument("frace: race_budget below min_blocks * candidates");

    RaceState state;
    state.surviving.resize(k);
    std::iota(state.surviving.begin(), state.surviving.end(), 0);

    while (true) {
        if (state.surviving.size() == 1) break;
        if (state.runs_done + static_cast<std::int64_t>(state.surviving.size()) > race_budget)
            break;
        const auto instance = instances();
        if (!instance) {
            if (state.blocks_done == 0) throw std::invalid_argument("frace: empty instance stream");
            break;
        }

        // One block: every surviving candidate runs on the same landscape
        // and seed. Runs are independent, so they parallelize freely.
        auto& row = state.results.emplace_back(k, std::numeric_limits<double>::quiet_NaN());
        std::vector<std::int64_t> evals(state.surviving.size(), 0);
        const auto& alive = state.surviving;
        parallel_for(alive.size(), options.jobs, [&](std::size_t s) {
            const int j = alive[s];
            const RunRecord record =
                run(candidates.algorithm, candidates.candidates[static_cast<std::size_t>(j)],
                    *instance->landscape, options.budget, instance->seed);
            row[static_cast<std::size_t>(j)] = record.error;
            evals[s] = record.evaluations_used;
        });
        state.runs_done += static_cast<std::int64_t>(alive.size());
        for (auto e : evals) state.evaluations_spent += e;
        ++state.blocks_done;

        if (state.blocks_done >= options.min_blocks && state.surviving.size() >= 2) {
            auto dropped = eliminate(state, options.alpha, options.min_blocks);
            if (!dropped.empty())
                outcome.elimination_log.emplace_back(state.blocks_done, std::move(dropped));
        }
    }

    // Winner: best mean rank among survivors across all blocks, ties broken
    // by mean error, then by candidate index.
    std::vector<std::vector<double>> errors(static_cast<std::size_t>(state.blocks_done));
    for (int b = 0; b < state.blocks_done; ++b)
        for (int j : state.surviving)
            errors[static_cast<std::size_t>(b)].push_back(
                state.results[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)]);

    std::size_t best = 0;
    if (state.blocks_done > 0 && state.surviving.size() > 1) {
        const auto summary = rank_summary(errors);
        std::vector<double> mean_error(state.surviving.size(), 0.0);
        for (const auto& row : errors)
            for (std::size_t j = 0; j < row.size(); ++j) mean_error[j] += row[j];
        for (std::size_t j = 1; j < state.surviving.size(); ++j) {
            if (summary.rank_sums[j] < summary.rank_sums[best] ||
                (summary.rank_sums[j] == summary.rank_sums[best] &&
                 mean_error[j] < mean_error[best]))
                best = j;
        }
    }

    outcome.winner_index = state.surviving[best];
    outcome.winner = candidates.candidates[static_cast<std::size_t>(outcome.winner_index)];
    outcome.blocks_used = state.blocks_done;
    outcome.survivors_at_end = static_cast<int>(state.surviving.size());
    outcome.runs_done = state.runs_done;
    outcome.evaluations_spent = state.evaluations_spent;
    return outcome;
}

} // namespace tunebench
