#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "tunebench/harness.hpp"
#include "tunebench/report.hpp"
#include "tunebench/text_io.hpp"

namespace {

// Exit codes, also documented in the README:
//   0 success, 2 usage error, 3 unreadable plan, 4 invalid overrides,
//   5 missing prerequisite artifacts, 1 any other failure.
constexpr int kExitUsage = 2;
constexpr int kExitPlan = 3;
constexpr int kExitOverrides = 4;
constexpr int kExitMissing = 5;

struct Options {
    std::string plan_path;
    std::string out_dir;
    double scale = -1.0;
    long long seed = -1;
    int jobs = 0;
    std::string algorithms;
    std::string characteristics;
};

std::filesystem::path resolve_out_dir(const Options& opt) {
    if (!opt.out_dir.empty()) return opt.out_dir;
    if (const char* env = std::getenv("TUNEBENCH_OUT"); env && *env) return env;
    return "tunebench-out";
}

tunebench::ExperimentPlan resolve_plan(const Options& opt) {
    tunebench::ExperimentPlan plan;
    if (!opt.plan_path.empty()) {
        try {
            plan = tunebench::load_plan(opt.plan_path);
        } catch (const std::runtime_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            std::exit(kExitPlan);
        }
    }
    try {
        if (opt.scale >= 0.0) plan.scale = opt.scale;
        if (opt.seed >= 0) plan.master_seed = static_cast<std::uint64_t>(opt.seed);
        if (!opt.algorithms.empty()) {
            plan.algorithms.clear();
            std::istringstream in(opt.algorithms);
            std::string name;
            while (std::getline(in, name, ','))
                plan.algorithms.push_back(tunebench::algorithm_from_string(name));
        }
        if (!opt.characteristics.empty()) {
            plan.characteristic_names.clear();
            std::istringstream in(opt.characteristics);
            std::string name;
            while (std::getline(in, name, ','))
                plan.characteristic_names.push_back(name);
        }
        plan.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid overrides: " << e.what() << "\n";
        std::exit(kExitOverrides);
    }
    return plan;
}

int resolve_jobs(const Options& opt) {
    if (opt.jobs > 0) return opt.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void print_progress(const std::string& line) { std::cout << line << "\n" << std::flush; }

int cmd_generate(const tunebench::ExperimentPlan& plan, const std::filesystem::path& out) {
    using namespace tunebench;
    for (const auto& name : plan.characteristic_names) {
        for (const double value : sweep_values(characteristic(name))) {
            const auto dir = out / "landscapes" / name / [&] {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.10g", value);
                return std::string(buf);
            }();
            for (int i = 0; i < plan.scaled_tuning_landscapes(); ++i) {
                const auto land = generate(
                    landscape_spec_for(name, value, plan.master_seed, i, /*tuning=*/true));
                save_landscape(land, dir / ("tuning_" + std::to_string(i) + ".msg"));
            }
            for (int j = 0; j < plan.scaled_comparison_landscapes(); ++j) {
                const auto land = generate(
                    landscape_spec_for(name, value, plan.master_seed, j, /*tuning=*/false));
                save_landscape(land, dir / ("comparison_" + std::to_string(j) + ".msg"));
            }
            std::cout << "[generate] " << name << "=" << value << " -> " << dir.string() << "\n";
        }
    }
    return 0;
}

int cmd_tune(const tunebench::ExperimentPlan& plan, const std::filesystem::path& out, int jobs) {
    using namespace tunebench;
    for (const AlgorithmId algorithm : plan.algorithms)
        for (const auto& name : plan.characteristic_names)
            for (const double value : sweep_values(characteristic(name)))
                tune_for_value(algorithm, name, value, plan, out / "tuned", jobs, {},
                               print_progress);
    return 0;
}

int cmd_compare(const tunebench::ExperimentPlan& plan, const std::filesystem::path& out,
                int jobs) {
    using namespace tunebench;
    const auto rows = full_experiment(plan, out, jobs, {}, print_progress);
    std::cout << "[compare] wrote " << rows.size() << " summary rows to "
              << (out / "summary.csv").string() << "\n";
    return 0;
}

int cmd_report(const tunebench::ExperimentPlan& plan, const std::filesystem::path& out) {
    using namespace tunebench;
    const auto csv = out / "summary.csv";
    if (!std::filesystem::exists(csv)) {
        std::cerr << "error: missing summaries: " << csv.string()
                  << " (run `tunebench compare` first)\n";
        return kExitMissing;
    }
    const auto rows = parse_summary_csv(read_file(csv));
    for (const AlgorithmId algorithm : plan.algorithms) {
        const auto name = to_string(algorithm);
        try {
            const auto model = spider_model(name, rows);
            const auto path = out / "plots" / (name + ".svg");
            emit_spider_svg(model, path);
            std::cout << "[report] " << path.string() << "\n";
        } catch (const std::invalid_argument&) {
            std::cerr << "error: missing summaries for " << name << " in " << csv.string()
                      << "\n";
            return kExitMissing;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parameter-tuning benchmark for nature-inspired optimizers"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    Options opt;
    app.add_option("--plan", opt.plan_path, "Experiment plan file (key = value sections)");
    app.add_option("--out", opt.out_dir, "Output directory (default $TUNEBENCH_OUT or ./tunebench-out)");
    app.add_option("--scale", opt.scale, "Override the plan's scale factor");
    app.add_option("--seed", opt.seed, "Override the plan's master seed");
    app.add_option("--jobs", opt.jobs, "Worker threads (default: logical CPUs)");
    app.add_option("--algorithms", opt.algorithms, "Comma-separated algorithm filter");
    app.add_option("--characteristics", opt.characteristics, "Comma-separated characteristic filter");

    auto* generate = app.add_subcommand("generate", "Write the plan's landscape files");
    auto* tune = app.add_subcommand("tune", "Race tuned configurations for every cell");
    auto* compare = app.add_subcommand("compare", "Run untuned vs tuned comparisons");
    auto* report = app.add_subcommand("report", "Emit spider-plot SVGs from summary.csv");
    auto* all = app.add_subcommand("all", "tune, compare, then report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    const auto plan = resolve_plan(opt);
    const auto out = resolve_out_dir(opt);
    const int jobs = resolve_jobs(opt);

    try {
        if (generate->parsed()) return cmd_generate(plan, out);
        if (tune->parsed()) return cmd_tune(plan, out, jobs);
        if (compare->parsed()) return cmd_compare(plan, out, jobs);
        if (report->parsed()) return cmd_report(plan, out);
        if (all->parsed()) {
            if (const int rc = cmd_tune(plan, out, jobs); rc != 0) return rc;
            if (const int rc = cmd_compare(plan, out, jobs); rc != 0) return rc;
            return cmd_report(plan, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
