#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "surface_gkp/experiment.h"
#include "surface_gkp/layout.h"
#include "surface_gkp/oracles.h"

using namespace surface_gkp;

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circuit-level Monte Carlo for the surface-GKP code"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key = value file; command-line flags win");

    int noise_case = 0;
    double sigma_gkp = -1.0;
    double sigma = -1.0;
    std::vector<int> distances{3, 5, 7};
    std::string grid;
    int64_t trials = 1000;
    uint64_t seed = 1;
    bool no_info = false;
    bool both_info = false;
    bool no_timing = false;
    std::string out;
    std::string format = "csv";
    int threads = 1;
    int64_t samples = 1000000;

    app.add_option("--case", noise_case, "noise case: 1 (GKP only), 2 (circuit only), 3 (both equal)")
        ->check(CLI::IsMember({1, 2, 3}));
    app.add_option("--sigma-gkp", sigma_gkp, "GKP preparation noise for a single point");
    app.add_option("--sigma", sigma, "circuit noise for a single point");
    app.add_option("--distances", distances, "comma-separated odd distances")->delimiter(',');
    app.add_option("--grid", grid, "swept noise values, lo:hi:n");
    app.add_option("--trials", trials, "trials per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "master seed");
    app.add_flag("--no-gkp-info", no_info, "ignore analog GKP information in the edge weights");
    app.add_flag("--both-info", both_info, "also decode every trial the other way (common random numbers)");
    app.add_flag("--no-timing", no_timing, "write 0 in the seconds column so output is reproducible");
    app.add_option("--out", out, "output path (default stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--samples", samples, "oracle: samples per table branch")->check(CLI::PositiveNumber);

    auto* run = app.add_subcommand("run", "run one batch");
    auto* scan = app.add_subcommand("scan", "threshold sweep with crossing estimates");
    auto* oracle = app.add_subcommand("oracle", "empirical variance of every sigma-table branch");
    auto* layout_cmd = app.add_subcommand("layout", "dump the code layout");
    for (auto* sub : {run, scan, oracle, layout_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::vector<int>& ds = distances;
        if (*layout_cmd) {
            std::string text;
            for (int d : ds) text += format == "json" ? layout_to_json(build_layout(d)) + "\n" : layout_to_text(build_layout(d));
            write_output(out, text);
            return 0;
        }
        if (*oracle) {
            if (sigma_gkp < 0.0 || sigma < 0.0) throw std::invalid_argument("oracle needs --sigma-gkp and --sigma");
            const NoiseParams params{Sigma(sigma_gkp), Sigma(sigma), true};
            std::string text;
            bool first = true;
            for (int d : ds) {
                const auto report = oracle_variance(build_layout(d), params, samples, seed, threads);
                if (format == "json") {
                    text += variance_report_json(report);
                } else {
                    std::string csv = variance_report_csv(report);
                    if (!first) csv = csv.substr(csv.find('\n') + 1);
                    text += csv;
                }
                first = false;
            }
            write_output(out, text);
            return 0;
        }

        ExperimentConfig cfg;
        cfg.distances = ds;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.use_info = !no_info;
        cfg.also_without_info = both_info;
        cfg.threads = threads;
        cfg.timing = !no_timing;
        if (noise_case != 0) {
            cfg.noise_case = static_cast<NoiseCase>(noise_case);
            if (grid.empty()) throw std::invalid_argument("--case needs --grid lo:hi:n");
            cfg.grid = Grid::parse(grid);
        } else {
            if (sigma_gkp < 0.0 || sigma < 0.0) throw std::invalid_argument("give --case or both --sigma-gkp and --sigma");
            if (*scan) throw std::invalid_argument("scan needs --case and --grid");
            cfg.sigma_gkp = sigma_gkp;
            cfg.sigma = sigma;
        }

        if (*run) {
            const BatchResult batch = run_batch(cfg);
            write_output(out, format == "json" ? to_json(cfg, batch, {}) : to_csv(batch));
            return 0;
        }
        const ScanResult result = scan_threshold(cfg);
        if (format == "json") {
            write_output(out, to_json(cfg, result.batch, result.crossings));
        } else {
            write_output(out, to_csv(result.batch));
            for (const auto& c : result.crossings) {
                std::cerr << "crossing (use_info=" << (c.use_info ? 1 : 0) << "): ";
                if (c.found) {
                    std::cerr << c.estimate << " [" << c.lo << ", " << c.hi << "]\n";
                } else {
                    std::cerr << "out of range\n";
                }
            }
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
