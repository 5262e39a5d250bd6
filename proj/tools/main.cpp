#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sisim/report.hpp"
#include "sisim/scenario_io.hpp"

namespace {

int run_command(const std::string& path, const std::string& out_dir,
                const std::string& checks, bool plot, bool analysis_only) {
    sisim::Scenario scenario = sisim::load_scenario(path);
    if (!checks.empty()) {
        scenario.checks.all = false;
        scenario.checks.ids.clear();
        std::istringstream items(checks);
        std::string id;
        while (std::getline(items, id, ','))
            if (!id.empty()) scenario.checks.ids.push_back(id);
    }
    sisim::RunOptions options;
    options.out_dir = out_dir;
    options.write_plot = plot;
    options.integrate = !analysis_only;
    const sisim::RunReport report = sisim::run_scenario(scenario, options);
    std::cout << sisim::report_summary(report);
    return report.failed() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator and analysis toolkit for a time-varying SIS model "
                 "with impulsive culling"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string checks;
    bool plot = false;

    CLI::App* run = app.add_subcommand("run", "integrate, analyze and monitor a scenario");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_option("--checks", checks, "comma separated check ids (default: all)");
    run->add_flag("--plot", plot, "also write an SVG plot of S/I/N");

    CLI::App* validate = app.add_subcommand("validate", "validate a scenario file");
    validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

    CLI::App* analyze =
        app.add_subcommand("analyze", "limiting-system analysis only, no integration");
    analyze->add_option("scenario", scenario_path, "scenario JSON file")->required();
    analyze->add_option("--out", out_dir, "output directory (default: out)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) {
            sisim::load_scenario(scenario_path);
            std::cout << "OK: " << scenario_path << "\n";
            return 0;
        }
        if (app.got_subcommand(run))
            return run_command(scenario_path, out_dir, checks, plot, false);
        return run_command(scenario_path, out_dir, checks, plot, true);
    } catch (const sisim::ValidationError& ex) {
        std::cerr << "scenario rejected:\n";
        for (const std::string& issue : ex.issues()) std::cerr << "  - " << issue << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
