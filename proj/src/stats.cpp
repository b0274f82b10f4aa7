#include "tunebench/stats.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tunebench {

double average_error(std::span<const RunRecord> records) {
    if (records.empty()) throw std::invalid_argument("average_error: no records");
    double sum = 0.0;
    for (const auto& r : records) sum += r.error;
    return sum / static_cast<double>(records.size());
}

std::pair<double, double> robustness(std::span<const double> per_value_means) {
    const std::size_t n = per_value_means.size();
    if (n < 2) throw std::invalid_argument("robustness: need at least 2 values");
    double mu = 0.0;
    for (double v : per_value_means) mu += v;
    mu /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : per_value_means) ss += (v - mu) * (v - mu);
    return {mu, std::sqrt(ss / static_cast<double>(n - 1))};
}

std::string to_string(TuningBenefit benefit) {
    switch (benefit) {
        case TuningBenefit::Never: return "NEVER";
        case TuningBenefit::Sometimes: return "SOMETIMES";
        case TuningBenefit::Always: return "ALWAYS";
    }
    throw std::invalid_argument("unknown benefit category");
}

TuningBenefit classify_tuning_benefit(std::span<const RobustnessSummary> summaries) {
    static constexpr std::array<const char*, 5> kCharacteristics = {
        "local_optima", "ratio", "dimensions", "boundary", "smoothness"};
    constexpr double kImprovementRatio = 0.75;

    std::map<std::string, std::array<const RobustnessSummary*, 2>> by_characteristic;
    for (const auto& s : summaries)
        by_characteristic[s.characteristic][s.tuned ? 1 : 0] = &s;

    bool never = true;
    bool always = true;
    for (const char* name : kCharacteristics) {
        const auto it = by_characteristic.find(name);
        if (it == by_characteristic.end() || !it->second[0] || !it->second[1])
            throw std::invalid_argument(std::string("classify_tuning_benefit: missing ") + name);
        const double untuned_mu = it->second[0]->mu;
        const double tuned_mu = it->second[1]->mu;
        if (tuned_mu < kImprovementRatio * untuned_mu) never = false;
        if (tuned_mu > kImprovementRatio * untuned_mu) always = false;
    }
    if (never) return TuningBenefit::Never;
    if (always) return TuningBenefit::Always;
    return TuningBenefit::Sometimes;
}

} // namespace tunebench
