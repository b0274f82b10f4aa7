#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tunebench/landscape.hpp"
#include "tunebench/optimizers.hpp"

namespace tunebench {

struct CandidateSet {
    AlgorithmId algorithm = AlgorithmId::SHC;
    std::vector<Configuration> candidates; // deduplicated, order-stable
};

// Full factorial product of the per-parameter grids. When the product
// exceeds `max_candidates` a low-discrepancy subsample of the product is
// taken instead; the subsample is deterministic in `seed`.
CandidateSet enumerate_candidates(AlgorithmId algorithm,
                                  const std::vector<ParameterDescriptor>& space,
                                  std::size_t max_candidates = 200, std::uint64_t seed = 0);

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> mean_ranks; // one per candidate, lower = better
};

// Friedman rank test over a blocks x candidates error matrix. Errors are
// ranked within each block (average ranks on ties, rank 1 = lowest error);
// the p-value uses the chi-squared approximation with k-1 degrees of
// freedom.
FriedmanResult friedman(const std::vector<std::vector<double>>& errors);

struct RaceState {
    std::vector<int> surviving; // indices into the candidate list
    // blocks x candidates; entries for candidates already eliminated at
    // that block are NaN.
    std::vector<std::vector<double>> results;
    int blocks_done = 0;
    std::int64_t runs_done = 0;
    std::int64_t evaluations_spent = 0;
};

// One Friedman-gated elimination step: when the test is significant at
// `alpha`, candidates whose rank-sum distance from the best exceeds the
// Conover post-test threshold are dropped. The best candidate survives
// unconditionally. Returns the indices eliminated (possibly empty).
std::vector<int> eliminate(RaceState& state, double alpha, int min_blocks = 5);

struct RaceOutcome {
    Configuration winner;
    int winner_index = 0;
    int blocks_used = 0;
    int survivors_at_end = 0;
    std::int64_t runs_done = 0;
    std::int64_t evaluations_spent = 0;
    std::vector<std::pair<int, std::vector<int>>> elimination_log;
};

// One block = one (landscape, seed) pair shared by every surviving
// candidate. Streams may be finite (return nullopt) or endless.
struct Instance {
    const Landscape* landscape = nullptr;
    std::uint64_t seed = 0;
};
using InstanceStream = std::function<std::optional<Instance>()>;

// How a candidate is executed; the default runner calls optimize().
using RunFn = std::function<RunRecord(AlgorithmId, const Configuration&, const Landscape&,
                                      Budget, std::uint64_t)>;
RunFn default_runner();

struct RaceOptions {
    Budget budget;                  // per run
    std::int64_t race_budget = 0;   // total runs allowed; 0 = 40 * |candidates|
    double alpha = 0.05;
    int min_blocks = 5;
    int jobs = 1;
};

// F-Race: feed blocks to all surviving candidates, eliminate statistically
// inferior ones after each block once min_blocks are done, and stop when a
// single candidate survives, the stream ends, or the next block would not
// fit in race_budget. The winner has the best mean rank among the final
// survivors (ties: lower mean error, then lower index).
RaceOutcome frace(const CandidateSet& candidates, const InstanceStream& instances,
                  const RaceOptions& options, const RunFn& runner = {});

} // namespace tunebench
