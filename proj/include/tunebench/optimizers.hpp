#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tunebench/landscape.hpp"

namespace tunebench {

class Rng;

enum class AlgorithmId { BFOA, BEES, ES, GA, HS, PSO, SHC };

inline constexpr std::array<AlgorithmId, 7> kAllAlgorithms = {
    AlgorithmId::BFOA, AlgorithmId::BEES, AlgorithmId::ES,  AlgorithmId::GA,
    AlgorithmId::HS,   AlgorithmId::PSO,  AlgorithmId::SHC};

std::string to_string(AlgorithmId id);
AlgorithmId algorithm_from_string(const std::string& name);

enum class ParamKind { Integer, Real };

struct ParameterDescriptor {
    std::string name;
    ParamKind kind = ParamKind::Real;
    double lower = 0.0;
    double upper = 0.0;
    double default_value = 0.0;
    std::vector<double> grid; // candidate values offered to the tuner
};

// A full assignment of one algorithm's parameters.
struct Configuration {
    AlgorithmId algorithm = AlgorithmId::SHC;
    std::map<std::string, double> values;

    double at(const std::string& name) const;
    int at_int(const std::string& name) const;
    // Throws std::invalid_argument unless the keys match the algorithm's
    // parameter space exactly, all values are in range, and integer
    // parameters hold integral values.
    void validate() const;
    // Stable content hash, used as config_id in run CSVs.
    std::string id() const;

    bool operator==(const Configuration& other) const = default;
};

std::string to_text(const Configuration& config);
Configuration configuration_from_text(const std::string& text);

struct Budget {
    std::int64_t max_evaluations = 20000;
};

struct RunRecord {
    AlgorithmId algorithm = AlgorithmId::SHC;
    Configuration config;
    std::string landscape_id;
    std::uint64_t seed = 0;
    std::vector<double> best_x;
    double best_fitness = 0.0;
    double error = 1.0;
    std::int64_t evaluations_used = 0;
};

inline constexpr const char* kRunCsvHeader =
    "algorithm,config_id,landscape_id,seed,best_fitness,error,evaluations";
std::string run_csv_line(const RunRecord& record);

// Closed parameter list for an algorithm; order is stable.
const std::vector<ParameterDescriptor>& parameter_space(AlgorithmId id);

Configuration default_configuration(AlgorithmId id);

// Uniform draw from the parameter box (integer parameters rounded).
Configuration random_configuration(AlgorithmId id, Rng& rng);

// Smallest budget the algorithm can run with: initialization plus one
// full iteration.
std::int64_t min_evaluations(AlgorithmId id, const Configuration& config);

// Called after every counted objective evaluation with the (already
// clamped) point and its fitness.
using EvalObserver = std::function<void(std::span<const double>, double)>;

// Runs one budgeted, seeded optimization. Candidate points are clamped
// coordinate-wise into the domain before evaluation; the best point is the
// first one attaining the maximum fitness seen. Deterministic in all
// arguments. Throws std::invalid_argument on an invalid configuration or a
// budget smaller than min_evaluations.
RunRecord optimize(AlgorithmId id, const Configuration& config, const Landscape& landscape,
                   Budget budget, std::uint64_t seed);
RunRecord optimize(AlgorithmId id, const Configuration& config, const Landscape& landscape,
                   Budget budget, std::uint64_t seed, const EvalObserver& observer);

} // namespace tunebench
