#include "tunebench/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tunebench/rng.hpp"
#include "tunebench/text_io.hpp"

namespace tunebench {

namespace {

constexpr int kMaxPlacementAttempts = 1000;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double min_pairwise_sqdist(const std::vector<std::vector<double>>& means) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < means.size(); ++i)
        for (std::size_t j = i + 1; j < means.size(); ++j)
            best = std::min(best, squared_distance(means[i], means[j]));
    return best;
}

std::string landscape_id(const LandscapeSpec& spec) {
    std::uint64_t h = 0x6d7367u; // arbitrary tag
    h = hash_u64(h, static_cast<std::uint64_t>(spec.num_local_optima));
    h = hash_f64(h, spec.ratio);
    h = hash_u64(h, static_cast<std::uint64_t>(spec.dimensions));
    h = hash_f64(h, spec.boundary);
    h = hash_f64(h, spec.smoothness);
    h = hash_u64(h, spec.seed);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "msg-%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

void LandscapeSpec::validate() const {
    if (num_local_optima < 0) throw std::invalid_argument("num_local_optima must be >= 0");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("ratio must be in (0,1)");
    if (dimensions < 1) throw std::invalid_argument("dimensions must be >= 1");
    if (!(boundary > 0.0)) throw std::invalid_argument("boundary must be > 0");
    if (!(smoothness > 0.0)) throw std::invalid_argument("smoothness must be > 0");
}

Landscape::Landscape(LandscapeSpec spec, std::vector<GaussianComponent> components,
                     int global_index)
    : spec_(std::move(spec)),
      components_(std::move(components)),
      global_index_(global_index),
      id_(landscape_id(spec_)) {
    spec_.validate();
    if (components_.size() != static_cast<std::size_t>(spec_.num_local_optima) + 1)
        throw std::invalid_argument("component count must be num_local_optima + 1");
    if (global_index_ < 0 || global_index_ >= static_cast<int>(components_.size()))
        throw std::invalid_argument("global_index out of range");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        if (c.mean.size() != static_cast<std::size_t>(spec_.dimensions))
            throw std::invalid_argument("component mean has wrong dimension");
        if (!(c.curvature > 0.0)) throw std::invalid_argument("curvature must be > 0");
        const bool is_global = static_cast<int>(i) == global_index_;
        if (is_global ? c.weight != 1.0 : !(c.weight > 0.0 && c.weight < 1.0))
            throw std::invalid_argument("weights must be 1 for the global component and in (0,1) otherwise");
    }
}

double Landscape::evaluate(std::span<const double> x) const {
    if (x.size() != static_cast<std::size_t>(spec_.dimensions))
        throw std::invalid_argument("evaluate: point has wrong dimension");
    for (double c : x)
        if (!(c >= 0.0 && c <= spec_.boundary))
            throw std::invalid_argument("evaluate: coordinate outside [0, boundary]");

    double best = 0.0;
    for (const auto& comp : components_) {
        if (comp.weight <= best) continue; // cannot beat the current max
        const double d2 = squared_distance(x, comp.mean);
        const double v = comp.weight * std::exp(-0.5 * comp.curvature * comp.curvature * d2);
        if (v > best) best = v;
    }
    // exp underflows to 0 far from every component; keep fitness positive.
    return std::max(best, std::numeric_limits<double>::min());
}

std::pair<std::vector<double>, double> Landscape::global_optimum() const {
    return {components_[static_cast<std::size_t>(global_index_)].mean, 1.0};
}

Landscape generate(const LandscapeSpec& spec) {
    spec.validate();
    const int count = spec.num_local_optima + 1;
    const double curvature = spec.smoothness / spec.boundary;
    const double min_sep = 2.0 / curvature;
    const double min_sep2 = min_sep * min_sep;

    Rng rng(spec.seed);
    std::vector<std::vector<double>> means;
    std::vector<std::vector<double>> best_means;
    double best_sep2 = -1.0;
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        means.assign(static_cast<std::size_t>(count), {});
        for (auto& m : means) {
            m.resize(static_cast<std::size_t>(spec.dimensions));
            for (auto& c : m) c = rng.uniform(0.0, spec.boundary);
        }
        const double sep2 = count > 1 ? min_pairwise_sqdist(means) : std::numeric_limits<double>::infinity();
        if (sep2 >= min_sep2) {
            best_means = means;
            break;
        }
        if (sep2 > best_sep2) {
            best_sep2 = sep2;
            best_means = means;
        }
    }

    std::vector<GaussianComponent> components(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        components[static_cast<std::size_t>(i)] = GaussianComponent{
            std::move(best_means[static_cast<std::size_t>(i)]), curvature,
            i == 0 ? 1.0 : spec.ratio};
    }
    return Landscape(spec, std::move(components), 0);
}

double error_of(const Landscape&, double best_fitness) {
    if (!(best_fitness >= 0.0 && best_fitness <= 1.0 + 1e-12))
        throw std::invalid_argument("best_fitness outside [0, 1]");
    return std::max(0.0, 1.0 - best_fitness);
}

std::string to_text(const Landscape& landscape) {
    const auto& s = landscape.spec();
    std::ostringstream out;
    out << "tunebench-landscape 1\n";
    out << "num_local_optima " << s.num_local_optima << "\n";
    out << "ratio " << fmt17(s.ratio) << "\n";
    out << "dimensions " << s.dimensions << "\n";
    out << "boundary " << fmt17(s.boundary) << "\n";
    out << "smoothness " << fmt17(s.smoothness) << "\n";
    out << "seed " << s.seed << "\n";
    out << "global_index " << landscape.global_index() << "\n";
    out << "components " << landscape.components().size() << "\n";
    for (const auto& c : landscape.components()) {
        out << "component " << fmt17(c.weight) << " " << fmt17(c.curvature);
        for (double m : c.mean) out << " " << fmt17(m);
        out << "\n";
    }
    return out.str();
}

Landscape landscape_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "tunebench-landscape" || version != 1)
        throw std::runtime_error("not a tunebench landscape document");

    LandscapeSpec spec;
    int global_index = 0;
    std::size_t count = 0;
    auto expect = [&](const char* key) {
        std::string k;
        in >> k;
        if (k != key) throw std::runtime_error(std::string("landscape parse: expected ") + key);
    };
    expect("num_local_optima"); in >> spec.num_local_optima;
    expect("ratio"); in >> spec.ratio;
    expect("dimensions"); in >> spec.dimensions;
    expect("boundary"); in >> spec.boundary;
    expect("smoothness"); in >> spec.smoothness;
    expect("seed"); in >> spec.seed;
    expect("global_index"); in >> global_index;
    expect("components"); in >> count;
    if (!in) throw std::runtime_error("landscape parse: malformed header");

    std::vector<GaussianComponent> components(count);
    for (auto& c : components) {
        expect("component");
        in >> c.weight >> c.curvature;
        c.mean.resize(static_cast<std::size_t>(spec.dimensions));
        for (auto& m : c.mean) in >> m;
        if (!in) throw std::runtime_error("landscape parse: malformed component");
    }
    return Landscape(spec, std::move(components), global_index);
}

void save_landscape(const Landscape& landscape, const std::filesystem::path& path) {
    write_file_atomic(path, to_text(landscape));
}

Landscape load_landscape(const std::filesystem::path& path) {
    return landscape_from_text(read_file(path));
}

} // namespace tunebench
