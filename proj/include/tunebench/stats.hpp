#pragma once

#include <span>
#include <string>
#include <vector>

#include "tunebench/optimizers.hpp"

namespace tunebench {

// Mean error of all runs at one characteristic value.
struct ValueErrorSummary {
    std::string characteristic;
    double value = 0.0;
    AlgorithmId algorithm = AlgorithmId::SHC;
    bool tuned = false;
    double average_error = 0.0;
    int n_runs = 0;
};

// One Table-2-style cell: mean and sample standard deviation of the
// per-value average errors across a characteristic sweep.
struct RobustnessSummary {
    std::string characteristic;
    AlgorithmId algorithm = AlgorithmId::SHC;
    bool tuned = false;
    double mu = 0.0;
    double sigma = 0.0;
    std::vector<ValueErrorSummary> per_value;
};

double average_error(std::span<const RunRecord> records);

// (mu, sigma) of per-value means; sigma uses the n-1 denominator.
// Requires at least two values.
std::pair<double, double> robustness(std::span<const double> per_value_means);

enum class TuningBenefit { Never, Sometimes, Always };
std::string to_string(TuningBenefit benefit);

// Trichotomy over one algorithm's ten summaries (five characteristics,
// untuned and tuned): NEVER when tuning never improves mu below 75% of the
// untuned value, ALWAYS when it does so on every characteristic, SOMETIMES
// otherwise.
TuningBenefit classify_tuning_benefit(std::span<const RobustnessSummary> summaries);

} // namespace tunebench
