#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tunebench {

// Parameters of one generated test landscape. The domain is the box
// [0, boundary]^dimensions.
struct LandscapeSpec {
    int num_local_optima = 3;
    double ratio = 0.5;       // peak value of local optima relative to the global one
    int dimensions = 2;
    double boundary = 30.0;   // upper bound of every coordinate
    double smoothness = 15.0; // curvature coefficient; larger = steeper peaks
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument on bad fields
};

struct GaussianComponent {
    std::vector<double> mean;
    double curvature = 1.0; // isotropic inverse width
    double weight = 1.0;    // peak value at the mean
};

// Immutable max-of-Gaussians objective with a known global optimum.
// Safe to share across threads once generated.
class Landscape {
public:
    Landscape(LandscapeSpec spec, std::vector<GaussianComponent> components,
              int global_index);

    const LandscapeSpec& spec() const { return spec_; }
    const std::vector<GaussianComponent>& components() const { return components_; }
    int global_index() const { return global_index_; }
    int dimensions() const { return spec_.dimensions; }
    double boundary() const { return spec_.boundary; }
    const std::string& id() const { return id_; }

    // Fitness in (0, 1]: max over components of
    // weight * exp(-0.5 * curvature^2 * |x - mean|^2).
    // Throws on dimension mismatch or out-of-domain coordinates.
    double evaluate(std::span<const double> x) const;

    // Location and value (exactly 1.0) of the global optimum.
    std::pair<std::vector<double>, double> global_optimum() const;

private:
    LandscapeSpec spec_;
    std::vector<GaussianComponent> components_;
    int global_index_;
    std::string id_;
};

// Builds a landscape from the spec. Component means are drawn uniformly in
// the domain and redrawn (up to a bounded number of attempts) until all
// pairwise distances reach 2/curvature; the best-separated draw is kept if
// the bound is exhausted. Deterministic in the spec, including its seed.
Landscape generate(const LandscapeSpec& spec);

// Exact error of a run result: 1 - best_fitness.
// Throws if best_fitness is outside [0, 1 + 1e-12].
double error_of(const Landscape& landscape, double best_fitness);

// Plain-text serialization; doubles are printed with 17 significant digits
// so a round-trip reproduces the landscape bit for bit.
std::string to_text(const Landscape& landscape);
Landscape landscape_from_text(const std::string& text);
void save_landscape(const Landscape& landscape, const std::filesystem::path& path);
Landscape load_landscape(const std::filesystem::path& path);

} // namespace tunebench
