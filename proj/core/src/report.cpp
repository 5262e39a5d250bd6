#include "sisim/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sisim/svg_plot.hpp"

namespace sisim {

using json = nlohmann::ordered_json;

namespace {

void append_digest(std::vector<CoefficientDigest>& out, const std::string& name,
                   const TimeFunction& f, double horizon) {
    const FunctionBounds b = bounds_over(f, 0.0, horizon);
    out.push_back({name, b.lower, b.upper});
}

// base state for the reconstruction window containing t (pre-side at
// impulse instants)
State window_base(const Trajectory& traj, double t, double* base_t) {
    State base = traj.initial;
    double bt = 0.0;
    for (const ImpulseRecord& rec : traj.impulse_records) {
        if (rec.t < t || (rec.t == 0.0 && t == 0.0)) {
            base = rec.after;
            bt = rec.t;
        }
    }
    if (base_t) *base_t = bt;
    return base;
}

std::optional<double> default_capacity_period(const Scenario& sc) {
    if (sc.analysis.capacity_period) return sc.analysis.capacity_period;
    for (const TimeFunction* f : {&sc.params.p0, &sc.params.K, &sc.params.delta1})
        if (const auto* s = std::get_if<Sinusoid>(&f->node))
            if (s->amplitude != 0.0) return s->period;
    return std::nullopt;
}

json bounds_to_json(const std::vector<CoefficientDigest>& ds) {
    json out = json::object();
    for (const CoefficientDigest& d : ds)
        out[d.name] = json{{"min", d.lower}, {"max", d.upper}};
    return out;
}

json limit_to_json(const std::optional<double>& v) {
    if (v) return *v;
    return "no_limit";
}

json equilibrium_to_json(const Equilibrium& eq) {
    json j;
    j["kind"] = eq.kind == EquilibriumKind::zero ? "zero" : "endemic";
    j["point"] = json{{"S", eq.point.S}, {"I", eq.point.I}};
    j["admissible"] = eq.admissible;
    j["classification"] = to_string(eq.classification);
    j["jacobian"] = json::array({json::array({eq.jacobian[0][0], eq.jacobian[0][1]}),
                                 json::array({eq.jacobian[1][0], eq.jacobian[1][1]})});
    j["eigenvalues"] = json::array(
        {json{{"re", eq.eigenvalues[0].real()}, {"im", eq.eigenvalues[0].imag()}},
         json{{"re", eq.eigenvalues[1].real()}, {"im", eq.eigenvalues[1].imag()}}});
    j["residual"] = eq.residual;
    return j;
}

} // namespace

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
    RunReport report;
    report.scenario_name = scenario.name;
    report.thresholds = scenario.thresholds;

    const ModelParams& mp = scenario.params;
    append_digest(report.coefficient_bounds, "r", mp.r, scenario.horizon);
    append_digest(report.coefficient_bounds, "d", mp.d, scenario.horizon);
    append_digest(report.coefficient_bounds, "gamma", mp.gamma, scenario.horizon);
    append_digest(report.coefficient_bounds, "beta", mp.beta, scenario.horizon);
    append_digest(report.coefficient_bounds, "delta1", mp.delta1, scenario.horizon);
    append_digest(report.coefficient_bounds, "delta2", mp.delta2, scenario.horizon);
    append_digest(report.coefficient_bounds, "K", mp.K, scenario.horizon);
    append_digest(report.coefficient_bounds, "p0", mp.p0, scenario.horizon);
    append_digest(report.coefficient_bounds, "p", sum({mp.K, mp.p0}), scenario.horizon);
    report.impulse_count = scenario.schedule.events.size();
    report.min_gap = scenario.schedule.min_gap;
    for (std::size_t k = 0; k < scenario.schedule.events.size(); ++k)
        if (scenario.schedule.events[k].zero_effect())
            report.zero_effect_events.push_back(k);

    // limiting-system analysis
    double w0 = scenario.horizon * (1.0 - scenario.thresholds.tail_fraction);
    double w1 = scenario.horizon;
    if (scenario.analysis.tail_window) {
        w0 = scenario.analysis.tail_window->first;
        w1 = scenario.analysis.tail_window->second;
    }
    report.limits = limiting_params(mp, w0, w1, scenario.thresholds.limit_tol,
                                    scenario.thresholds.quad_tol);
    if (report.limits.complete())
        report.equilibria_found = equilibria(report.limits.values(), scenario.thresholds);

    if (const std::optional<double> Tp = default_capacity_period(scenario);
        Tp && *Tp <= scenario.horizon) {
        report.capacity_period_tested = *Tp;
        report.periodicity =
            verify_periodic_capacity(mp, *Tp, scenario.analysis.probe_count,
                                     scenario.horizon, scenario.thresholds);
    }
    report.infection_free =
        classify_infection_free(mp, scenario.horizon, scenario.thresholds);

    auto write_artifacts = [&](const Trajectory& traj) {
        if (!options.write_outputs) return;
        std::filesystem::create_directories(options.out_dir);
        {
            std::ofstream csv(options.out_dir / "trajectory.csv");
            traj.write_csv(csv);
            report.files.push_back("trajectory.csv");
        }
        if (options.write_plot) {
            std::ofstream svg(options.out_dir / "trajectory.svg");
            write_trajectory_svg(traj, svg);
            report.files.push_back("trajectory.svg");
        }
    };

    if (options.integrate) {
        Trajectory traj;
        try {
            traj = integrate(scenario);
        } catch (const IntegrationAbort& abort) {
            if (abort.partial()) {
                write_artifacts(*abort.partial());
                if (options.write_outputs) {
                    std::ofstream rep(options.out_dir / "report.json");
                    report.diagnostics.push_back(abort.what());
                    rep << report_to_json(report) << "\n";
                }
            }
            throw;
        }
        report.integrated = true;
        report.step_stats = traj.step_stats;
        report.diagnostics = traj.diagnostics;

        report.checks = run_all_checks(traj, scenario);

        // reconstruction oracles at evenly spaced probe times
        const int n = std::max(scenario.analysis.probe_count, 1);
        ClosedFormEngine engine(traj, mp, scenario.thresholds.quad_tol * 0.01);
        OracleSection& oracle = report.oracles;
        oracle.evaluated = true;
        oracle.probe_count = n;
        for (int i = 1; i <= n; ++i) {
            const double t = traj.end_time() * static_cast<double>(i) / n;
            // the reconstructions are left limits at impulse instants
            State ref = traj.interpolate(t);
            for (const ImpulseRecord& rec : traj.impulse_records)
                if (rec.t == t) ref = rec.before;
            const double eps_I = 1e-12 * (1.0 + traj.initial.I);
            const double eps_N = 1e-12 * (1.0 + traj.initial.N());
            const double cf_I = engine.infected(t);
            oracle.max_residual_I =
                std::max(oracle.max_residual_I,
                         std::abs(cf_I - ref.I) / std::max(std::abs(ref.I), eps_I));
            const double cf_N = engine.total(t);
            oracle.max_residual_N =
                std::max(oracle.max_residual_N,
                         std::abs(cf_N - (ref.S + ref.I)) /
                             std::max(std::abs(ref.S + ref.I), eps_N));
            const FundamentalMatrix psi = engine.fundamental(t);
            const State base = window_base(traj, t, nullptr);
            const double rec_S = psi.psi11 * base.S + psi.psi12 * base.I;
            const double rec_I = psi.psi22 * base.I;
            const double norm_ref = std::hypot(ref.S, ref.I);
            oracle.max_residual_psi =
                std::max(oracle.max_residual_psi,
                         std::hypot(rec_S - ref.S, rec_I - ref.I) /
                             std::max(norm_ref, eps_N));
        }

        write_artifacts(traj);
    }

    if (options.write_outputs) {
        std::filesystem::create_directories(options.out_dir);
        report.files.push_back("report.json");
        report.files.push_back("summary.txt");
        std::ofstream rep(options.out_dir / "report.json");
        rep << report_to_json(report) << "\n";
        std::ofstream sum(options.out_dir / "summary.txt");
        sum << report_summary(report);
    }
    return report;
}

std::string report_to_json(const RunReport& report) {
    json j;
    j["scenario"] = report.scenario_name;

    json digest;
    digest["coefficient_bounds"] = bounds_to_json(report.coefficient_bounds);
    digest["impulse_count"] = report.impulse_count;
    digest["min_gap"] = report.min_gap;
    digest["zero_effect_events"] = report.zero_effect_events;
    j["digest"] = digest;

    json analysis;
    analysis["limit_window"] =
        json::array({report.limits.window_start, report.limits.window_end});
    analysis["limits"] = json{{"r", limit_to_json(report.limits.r)},
                              {"d", limit_to_json(report.limits.d)},
                              {"gamma", limit_to_json(report.limits.gamma)},
                              {"beta", limit_to_json(report.limits.beta)},
                              {"delta1", limit_to_json(report.limits.delta1)},
                              {"delta2", limit_to_json(report.limits.delta2)},
                              {"p", limit_to_json(report.limits.p)}};
    json eqs = json::array();
    for (const Equilibrium& eq : report.equilibria_found) {
        json ej = equilibrium_to_json(eq);
        if (eq.kind == EquilibriumKind::endemic && report.limits.complete()) {
            // the adopted infected level solves the balance equations
            // directly; two alternative algebraic variants are recorded for
            // transparency since they disagree away from special cases
            const LimitingParams lim = report.limits.values();
            const double S2 = eq.point.S;
            const double num =
                lim.gamma_star * (lim.p_star - lim.delta1_star * S2) *
                (lim.d_star + lim.gamma_star);
            json variants;
            variants["adopted"] = eq.point.I;
            variants["gamma_weighted"] =
                num / (lim.d_star * lim.beta_star * lim.p_star);
            variants["mixed_denominator"] =
                num / (lim.d_star * lim.beta_star * lim.p_star +
                       lim.r_star * lim.delta2_star);
            ej["infected_level_variants"] = variants;
        }
        eqs.push_back(ej);
    }
    analysis["equilibria"] = eqs;
    if (report.periodicity) {
        analysis["periodicity"] =
            json{{"period", report.capacity_period_tested},
                 {"periodic", report.periodicity->periodic},
                 {"max_residual", report.periodicity->max_residual}};
    }
    analysis["infection_free"] =
        json{{"label", to_string(report.infection_free.label)},
             {"tail_slope", report.infection_free.tail_slope}};
    j["analysis"] = analysis;

    json checks = json::array();
    for (const CheckEntry& e : report.checks.entries) {
        json c;
        c["id"] = e.check_id;
        c["hypothesis"] = to_string(e.hypothesis);
        c["conclusion"] = to_string(e.conclusion);
        c["evidence"] = e.evidence;
        if (!e.notes.empty()) c["notes"] = e.notes;
        checks.push_back(c);
    }
    j["checks"] = checks;

    if (report.oracles.evaluated) {
        j["oracles"] = json{{"probes", report.oracles.probe_count},
                            {"max_residual_I", report.oracles.max_residual_I},
                            {"max_residual_N", report.oracles.max_residual_N},
                            {"max_residual_psi", report.oracles.max_residual_psi}};
    }

    if (report.integrated) {
        j["integration"] = json{{"accepted_steps", report.step_stats.accepted},
                                {"rejected_steps", report.step_stats.rejected},
                                {"min_step", report.step_stats.min_step},
                                {"max_step", report.step_stats.max_step},
                                {"diagnostics", report.diagnostics}};
    }
    j["files"] = report.files;
    j["failed"] = report.failed();
    return j.dump(2);
}

std::string report_summary(const RunReport& report) {
    std::ostringstream os;
    os << "scenario: "
       << (report.scenario_name.empty() ? "(unnamed)" : report.scenario_name) << "\n";
    os << "status: " << (report.failed() ? "FAIL" : "OK") << "\n";

    os << "\ncoefficient bounds over [0, horizon]:\n";
    for (const CoefficientDigest& d : report.coefficient_bounds)
        os << "  " << d.name << " in [" << d.lower << ", " << d.upper << "]\n";
    os << "impulses: " << report.impulse_count << " (min gap " << report.min_gap
       << ", " << report.zero_effect_events.size() << " zero-effect)\n";

    os << "\nlimiting system:\n";
    auto lim_line = [&](const char* name, const std::optional<double>& v) {
        os << "  " << name << "* = ";
        if (v) os << *v;
        else os << "no limit";
        os << "\n";
    };
    lim_line("r", report.limits.r);
    lim_line("d", report.limits.d);
    lim_line("gamma", report.limits.gamma);
    lim_line("beta", report.limits.beta);
    lim_line("delta1", report.limits.delta1);
    lim_line("delta2", report.limits.delta2);
    lim_line("p", report.limits.p);
    for (const Equilibrium& eq : report.equilibria_found) {
        os << "  " << (eq.kind == EquilibriumKind::zero ? "zero" : "endemic")
           << " equilibrium (" << eq.point.S << ", " << eq.point.I
           << "): " << to_string(eq.classification);
        if (!eq.admissible) os << " [non-admissible]";
        os << "\n";
    }
    if (report.periodicity) {
        os << "  capacity period " << report.capacity_period_tested << ": "
           << (report.periodicity->periodic ? "periodic" : "not periodic")
           << " (max residual " << report.periodicity->max_residual << ")\n";
    }
    os << "  infection-free flow: " << to_string(report.infection_free.label)
       << " (tail slope " << report.infection_free.tail_slope << ")\n";

    if (!report.checks.entries.empty()) {
        os << "\nchecks (hypothesis/conclusion):\n";
        for (const CheckEntry& e : report.checks.entries) {
            os << "  " << (e.violation() ? "[VIOLATION] " : "") << e.check_id << ": "
               << to_string(e.hypothesis) << "/" << to_string(e.conclusion);
            if (!e.notes.empty()) os << "  (" << e.notes << ")";
            os << "\n";
        }
    }
    if (report.oracles.evaluated) {
        os << "\noracle residuals over " << report.oracles.probe_count
           << " probes: I " << report.oracles.max_residual_I << ", N "
           << report.oracles.max_residual_N << ", psi "
           << report.oracles.max_residual_psi << "\n";
    }
    if (report.integrated) {
        os << "\nintegration: " << report.step_stats.accepted << " accepted / "
           << report.step_stats.rejected << " rejected steps, h in ["
           << report.step_stats.min_step << ", " << report.step_stats.max_step
           << "]\n";
        for (const std::string& d : report.diagnostics) os << "  diagnostic: " << d << "\n";
    }
    if (!report.files.empty()) {
        os << "\nfiles:";
        for (const std::string& f : report.files) os << " " << f;
        os << "\n";
    }
    return os.str();
}

} // namespace sisim
