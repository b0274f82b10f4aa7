#include "tunebench/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "tunebench/text_io.hpp"

namespace tunebench {

namespace {

constexpr int kCanvas = 600;
constexpr double kCenter = kCanvas / 2.0;
constexpr double kPlotRadius = 220.0;
constexpr std::array<const char*, 2> kSeriesColor = {"#c0392b", "#2471a3"}; // untuned, tuned
constexpr std::array<const char*, 2> kSeriesName = {"untuned", "tuned"};

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Axis i of n, first axis pointing straight up.
std::pair<double, double> axis_point(std::size_t i, std::size_t n, double r) {
    const double angle = -1.5707963267948966 + 6.283185307179586 * static_cast<double>(i) /
                                                  static_cast<double>(n);
    return {kCenter + r * std::cos(angle), kCenter + r * std::sin(angle)};
}

std::string polygon_points(std::span<const double> radii) {
    std::string points;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const auto [x, y] = axis_point(i, radii.size(), radii[i] * kPlotRadius);
        if (!points.empty()) points += " ";
        points += coord(x) + "," + coord(y);
    }
    return points;
}

} // namespace

std::string summary_csv(std::span<const RobustnessSummary> rows) {
    std::vector<const RobustnessSummary*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
        const auto ka = std::make_tuple(to_string(a->algorithm), a->characteristic, a->tuned);
        const auto kb = std::make_tuple(to_string(b->algorithm), b->characteristic, b->tuned);
        return ka < kb;
    });

    std::ostringstream out;
    out << kSummaryCsvHeader << "\n";
    for (const auto* r : sorted)
        out << to_string(r->algorithm) << "," << r->characteristic << "," << (r->tuned ? 1 : 0)
            << "," << fmt_sig(r->mu, 6) << "," << fmt_sig(r->sigma, 6) << "\n";
    return out.str();
}

void emit_summary_csv(std::span<const RobustnessSummary> rows,
                      const std::filesystem::path& path) {
    write_file_atomic(path, summary_csv(rows));
}

std::vector<RobustnessSummary> parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kSummaryCsvHeader)
        throw std::runtime_error("summary csv: bad header");
    std::vector<RobustnessSummary> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string algorithm, characteristic, tuned, mu, sigma;
        if (!std::getline(fields, algorithm, ',') || !std::getline(fields, characteristic, ',') ||
            !std::getline(fields, tuned, ',') || !std::getline(fields, mu, ',') ||
            !std::getline(fields, sigma))
            throw std::runtime_error("summary csv: bad row: " + line);
        RobustnessSummary row;
        row.algorithm = algorithm_from_string(algorithm);
        row.characteristic = characteristic;
        row.tuned = tuned == "1";
        row.mu = std::stod(mu);
        row.sigma = std::stod(sigma);
        rows.push_back(std::move(row));
    }
    return rows;
}

double radial(double mu) {
    if (mu < 0.0) throw std::invalid_argument("radial: negative mean error");
    return 1.0 / (1.0 + 10.0 * mu);
}

SpiderPlotModel spider_model(const std::string& algorithm,
                             std::span<const RobustnessSummary> rows) {
    static constexpr std::array<const char*, 5> kOrder = {"local_optima", "ratio", "dimensions",
                                                          "boundary", "smoothness"};
    SpiderPlotModel model;
    model.algorithm = algorithm;
    const AlgorithmId id = algorithm_from_string(algorithm);
    for (const char* name : kOrder) {
        const RobustnessSummary* untuned = nullptr;
        const RobustnessSummary* tuned = nullptr;
        for (const auto& r : rows) {
            if (r.algorithm != id || r.characteristic != name) continue;
            (r.tuned ? tuned : untuned) = &r;
        }
        if (!untuned || !tuned)
            throw std::invalid_argument("spider_model: missing rows for " + std::string(name));
        model.axes.push_back(name);
        model.untuned.push_back(radial(untuned->mu));
        model.tuned.push_back(radial(tuned->mu));
    }
    return model;
}

std::string spider_svg(const SpiderPlotModel& model) {
    const std::size_t n = model.axes.size();
    if (n == 0 || model.untuned.size() != n || model.tuned.size() != n)
        throw std::invalid_argument("spider_svg: inconsistent model");

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas
        << "\" height=\"" << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " " << kCanvas
        << "\">\n";
    out << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << coord(kCenter) << "\" y=\"40\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"24\">" << model.algorithm << "</text>\n";

    // Grid rings and axes are paths so the two data series stay the only
    // polygon elements in the document.
    for (int ring = 1; ring <= 4; ++ring) {
        const double r = kPlotRadius * ring / 4.0;
        out << "<path d=\"";
        for (std::size_t i = 0; i < n; ++i) {
            const auto [x, y] = axis_point(i, n, r);
            out << (i == 0 ? "M" : "L") << coord(x) << " " << coord(y) << " ";
        }
        out << "Z\" fill=\"none\" stroke=\"#d5d8dc\" stroke-width=\"1\"/>\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto [x, y] = axis_point(i, n, kPlotRadius);
        out << "<path d=\"M" << coord(kCenter) << " " << coord(kCenter) << " L" << coord(x) << " "
            << coord(y) << "\" stroke=\"#aab7b8\" stroke-width=\"1\"/>\n";
        const auto [lx, ly] = axis_point(i, n, kPlotRadius + 28.0);
        out << "<text x=\"" << coord(lx) << "\" y=\"" << coord(ly)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
            << model.axes[i] << "</text>\n";
    }

    const std::array<std::span<const double>, 2> series = {model.untuned, model.tuned};
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polygon points=\"" << polygon_points(series[s]) << "\" fill=\"" << kSeriesColor[s]
            << "\" fill-opacity=\"0.25\" stroke=\"" << kSeriesColor[s]
            << "\" stroke-width=\"2\"/>\n";
    }

    for (std::size_t s = 0; s < series.size(); ++s) {
        const double y = kCanvas - 46.0 + 20.0 * static_cast<double>(s);
        out << "<rect x=\"24\" y=\"" << coord(y) << "\" width=\"14\" height=\"14\" fill=\""
            << kSeriesColor[s] << "\" fill-opacity=\"0.6\"/>\n";
        out << "<text x=\"44\" y=\"" << coord(y + 12.0)
            << "\" font-family=\"sans-serif\" font-size=\"14\">" << kSeriesName[s] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void emit_spider_svg(const SpiderPlotModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, spider_svg(model));
}

} // namespace tunebench
