#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include "tunebench/landscape.hpp"
#include "tunebench/optimizers.hpp"
#include "tunebench/rng.hpp"

namespace tunebench::detail {

// Thrown by the evaluator when the budget runs out; unwinds whatever loop
// the algorithm is in and ends the run.
struct BudgetExhausted {};

// Counts objective evaluations, clamps candidates into the domain, and
// tracks the best point seen (strict improvement, first-found wins).
class BudgetedEvaluator {
public:
    BudgetedEvaluator(const Landscape& landscape, std::int64_t max_evaluations,
                      const EvalObserver* observer)
        : landscape_(landscape),
          boundary_(landscape.boundary()),
          max_(max_evaluations),
          observer_(observer) {}

    // Clamps x in place, then evaluates it. Callers that keep x as state
    // (positions, memories) therefore always hold in-domain points.
    double evaluate(std::vector<double>& x) {
        if (used_ >= max_) throw BudgetExhausted{};
        for (auto& c : x) c = std::clamp(c, 0.0, boundary_);
        const double f = landscape_.evaluate(x);
        ++used_;
        if (f > best_fitness_) {
            best_fitness_ = f;
            best_x_ = x;
        }
        if (observer_ && *observer_) (*observer_)(x, f);
        return f;
    }

    std::vector<double> random_point(Rng& rng) const {
        std::vector<double> x(static_cast<std::size_t>(landscape_.dimensions()));
        for (auto& c : x) c = rng.uniform(0.0, boundary_);
        return x;
    }

    int dimensions() const { return landscape_.dimensions(); }
    double boundary() const { return boundary_; }
    std::int64_t used() const { return used_; }
    std::int64_t remaining() const { return max_ - used_; }
    double best_fitness() const { return best_fitness_; }
    const std::vector<double>& best_x() const { return best_x_; }

private:
    const Landscape& landscape_;
    double boundary_;
    std::int64_t max_;
    std::int64_t used_ = 0;
    double best_fitness_ = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x_;
    const EvalObserver* observer_;
};

// Exposed for tests: the GA's binary-to-point decoding.
std::vector<double> ga_decode(const std::vector<std::uint8_t>& bits, int bits_per_var, int dims,
                              double boundary);

void run_bfoa(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_bees(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_es(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_ga(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_hs(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_pso(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);
void run_shc(const Configuration& cfg, BudgetedEvaluator& ev, Rng& rng);

} // namespace tunebench::detail
