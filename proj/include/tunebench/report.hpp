#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tunebench/stats.hpp"

namespace tunebench {

inline constexpr const char* kSummaryCsvHeader = "algorithm,characteristic,tuned,mu,sigma";

// Table-2-style CSV: one row per (algorithm, characteristic, tuned) cell,
// sorted by that triple, numbers at 6 significant digits.
std::string summary_csv(std::span<const RobustnessSummary> rows);
void emit_summary_csv(std::span<const RobustnessSummary> rows, const std::filesystem::path& path);
std::vector<RobustnessSummary> parse_summary_csv(const std::string& text);

// Radial coordinate of a mean error: 1 / (1 + 10 mu), strictly decreasing,
// so smaller errors plot farther from the origin.
double radial(double mu);

struct SpiderPlotModel {
    std::string algorithm;
    std::vector<std::string> axes;
    std::vector<double> untuned; // radial values in (0, 1]
    std::vector<double> tuned;
};

// Model for one algorithm from its ten summary rows; axes follow the
// canonical characteristic order.
SpiderPlotModel spider_model(const std::string& algorithm,
                             std::span<const RobustnessSummary> rows);

// Standalone SVG 1.1 document: five axes 72 degrees apart, two closed
// polygons (untuned, tuned) and a legend. Byte-identical for equal input.
std::string spider_svg(const SpiderPlotModel& model);
void emit_spider_svg(const SpiderPlotModel& model, const std::filesystem::path& path);

} // namespace tunebench
