#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sisim/analysis.hpp"
#include "sisim/monitors.hpp"

namespace sisim {

/// Residuals of the closed-form and state-transition reconstructions
/// against the integrated trajectory at the probe times.
struct OracleSection {
    bool evaluated = false;
    int probe_count = 0;
    double max_residual_I = 0.0;
    double max_residual_N = 0.0;
    double max_residual_psi = 0.0;

    bool within(const Thresholds& th) const {
        return !evaluated || (max_residual_I <= th.oracle_tol_I &&
                              max_residual_N <= th.oracle_tol_N &&
                              max_residual_psi <= th.oracle_tol_psi);
    }
};

struct CoefficientDigest {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
};

struct RunReport {
    std::string scenario_name;

    // scenario digest
    std::vector<CoefficientDigest> coefficient_bounds;
    std::size_t impulse_count = 0;
    std::vector<std::size_t> zero_effect_events;
    double min_gap = 0.0;

    // analysis
    LimitEstimate limits;
    std::vector<Equilibrium> equilibria_found;
    std::optional<PeriodicityVerdict> periodicity;
    double capacity_period_tested = 0.0;
    InfectionFreeReport infection_free;

    // monitors and oracles
    ConditionReport checks;
    OracleSection oracles;

    // run record
    bool integrated = false;
    StepStats step_stats;
    std::vector<std::string> diagnostics;
    Thresholds thresholds;

    std::vector<std::string> files;

    bool failed() const {
        return checks.any_violation() || !oracles.within(thresholds);
    }
};

struct RunOptions {
    std::filesystem::path out_dir;
    bool write_outputs = true; // trajectory CSV, report JSON, summary text
    bool write_plot = false;
    bool integrate = true; // false: analysis-only (`analyze` subcommand)
};

/// Integrates the scenario, runs the analysis and the enabled checks,
/// evaluates the reconstruction oracles and writes the artifact files.
/// On integration failure the partial trajectory is still written before
/// the error is rethrown.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options);

std::string report_to_json(const RunReport& report);
std::string report_summary(const RunReport& report);

} // namespace sisim
