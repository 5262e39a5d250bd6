#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "sisim/report.hpp"
#include "sisim/scenario_io.hpp"

using namespace sisim;

namespace {

std::string minimal_scenario_json() {
    return R"({
      "name": "minimal",
      "params": {
        "r": 1.0, "d": 0.5, "gamma": 0.5, "beta": 0.1,
        "delta1": 1.0, "delta2": 1.0, "K": 100.0, "p0": 0.0, "eps0": 1e-6
      },
      "initial": {"S": 20.0, "I": 5.0},
      "horizon": 10.0
    })";
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool rejected_with(const std::string& json, const std::string& needle) {
    try {
        parse_scenario(json);
        return false;
    } catch (const ValidationError& ex) {
        for (const std::string& issue : ex.issues())
            if (issue.find(needle) != std::string::npos) return true;
        return false;
    }
}

} // namespace

TEST_SUITE("scenario_io") {

TEST_CASE("minimal constant scenario loads with defaults") {
    const Scenario sc = parse_scenario(minimal_scenario_json());
    CHECK(sc.name == "minimal");
    CHECK(sc.params.r == constant(1.0));
    CHECK(sc.params.K == constant(100.0));
    CHECK(sc.initial.S == 20.0);
    CHECK(sc.horizon == 10.0);
    CHECK(sc.schedule.empty());
    CHECK(sc.checks.all);
    CHECK(sc.tolerances.rel == 1e-8);
    CHECK_FALSE(sc.output_grid.empty());
}

TEST_CASE("tagged time functions parse") {
    const std::string text = R"({
      "params": {
        "r": {"type": "sinusoid", "mean": 0.5, "amplitude": 0.2, "period": 3.0},
        "d": {"type": "piecewise_constant", "breakpoints": [2.0], "values": [0.5, 0.7]},
        "gamma": {"type": "piecewise_linear", "knots": [[0.0, 0.4], [5.0, 0.1]]},
        "beta": {"type": "scaled", "factor": 0.5, "inner": 0.2},
        "delta1": {"type": "sum", "terms": [1.0, {"type": "sinusoid", "mean": 0.0,
                   "amplitude": 0.3, "period": 2.0, "phase": 0.0}]},
        "delta2": 1.0, "K": 80.0, "p0": 0.0
      },
      "initial": {"S": 10.0, "I": 1.0},
      "horizon": 8.0
    })";
    const Scenario sc = parse_scenario(text);
    CHECK(std::holds_alternative<Sinusoid>(sc.params.r.node));
    CHECK(std::holds_alternative<Sum>(sc.params.delta1.node));
    CHECK(eval(sc.params.beta, 0.0) == doctest::Approx(0.1));
}

TEST_CASE("rejections carry the violated constraint") {
    // schedule gap below the minimum spacing
    const std::string gap = R"({
      "params": {"r": 1.0, "d": 0.5, "gamma": 0.5, "beta": 0.1,
                 "delta1": 1.0, "delta2": 1.0, "K": 100.0, "p0": 0.0},
      "initial": {"S": 20.0, "I": 5.0},
      "impulses": {"min_gap": 1.0, "events": [{"t": 1.0, "p": 0.2, "q": 0.2},
                                              {"t": 1.5, "p": 0.2, "q": 0.2}]},
      "horizon": 10.0
    })";
    CHECK(rejected_with(gap, "minimum spacing"));

    std::string neg_beta = minimal_scenario_json();
    neg_beta.replace(neg_beta.find("\"beta\": 0.1"), 11, "\"beta\": -0.1");
    CHECK(rejected_with(neg_beta, "beta must be nonnegative"));

    std::string bad_K = minimal_scenario_json();
    bad_K.replace(bad_K.find("\"K\": 100.0"), 10, "\"K\": 0.0");
    CHECK(rejected_with(bad_K, "strictly positive"));

    std::string neg_gamma = minimal_scenario_json();
    neg_gamma.replace(neg_gamma.find("\"gamma\": 0.5"), 12, "\"gamma\": -0.5");
    CHECK(rejected_with(neg_gamma, "gamma must be nonnegative"));

    // capacity oscillation exceeding the baseline margin
    std::string big_p0 = minimal_scenario_json();
    big_p0.replace(big_p0.find("\"p0\": 0.0"), 9, "\"p0\": 200.0");
    CHECK(rejected_with(big_p0, "baseline margin"));

    CHECK(rejected_with("{not json", "syntax"));
}

TEST_CASE("negative recovery requires the explicit opt-in") {
    std::string text = minimal_scenario_json();
    text.replace(text.find("\"gamma\": 0.5"), 12, "\"gamma\": -0.5");
    text.replace(text.find("\"name\": \"minimal\","), 18,
                 "\"name\": \"neg\", \"allow_negative_gamma\": true,");
    const Scenario sc = parse_scenario(text);
    CHECK(eval(sc.params.gamma, 0.0) == -0.5);
}

TEST_CASE("serialization round-trips to an equal scenario") {
    corpus::Rng rng(11u);
    for (int trial = 0; trial < 10; ++trial) {
        Scenario sc = corpus::random_positivity_scenario(rng, trial % 2 == 0);
        sc.name = "roundtrip";
        sc.analysis.capacity_period = 2.5;
        const std::string text = serialize_scenario(sc);
        const Scenario back = parse_scenario(text);
        CHECK(back == sc);
    }
}

TEST_CASE("deterministic artifacts") {
    Scenario sc = parse_scenario(minimal_scenario_json());
    const auto dir1 = std::filesystem::temp_directory_path() / "sisim_det_1";
    const auto dir2 = std::filesystem::temp_directory_path() / "sisim_det_2";
    RunOptions opt;
    opt.out_dir = dir1;
    run_scenario(sc, opt);
    opt.out_dir = dir2;
    run_scenario(sc, opt);
    CHECK(read_file(dir1 / "trajectory.csv") == read_file(dir2 / "trajectory.csv"));
    CHECK(read_file(dir1 / "report.json") == read_file(dir2 / "report.json"));
    CHECK(!read_file(dir1 / "report.json").empty());
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("endemic-stable run end to end") {
    const std::string text = R"({
      "name": "endemic",
      "params": {"r": 1.0, "d": 0.5, "gamma": 0.5, "beta": 0.1,
                 "delta1": 1.0, "delta2": 1.0, "K": 100.0, "p0": 0.0},
      "initial": {"S": 10.1, "I": 15.15},
      "horizon": 40.0,
      "tolerances": {"rel": 1e-10, "abs": 1e-12}
    })";
    const Scenario sc = parse_scenario(text);
    RunOptions opt;
    opt.write_outputs = false;
    const RunReport report = run_scenario(sc, opt);
    CHECK_FALSE(report.failed());
    REQUIRE(report.limits.complete());
    bool found_endemic = false;
    for (const Equilibrium& eq : report.equilibria_found) {
        if (eq.kind != EquilibriumKind::endemic) continue;
        found_endemic = true;
        CHECK(eq.classification == StabilityClass::locally_asymptotically_stable);
        CHECK(eq.point.S == doctest::Approx(10.0).epsilon(1e-8));
        CHECK(eq.point.I == doctest::Approx(15.0).epsilon(1e-8));
    }
    CHECK(found_endemic);
    CHECK(report.oracles.evaluated);
    CHECK(report.oracles.max_residual_I <= report.thresholds.oracle_tol_I);
    CHECK(report.oracles.max_residual_N <= report.thresholds.oracle_tol_N);
    CHECK(report.oracles.max_residual_psi <= report.thresholds.oracle_tol_psi);
}

TEST_CASE("impulse-extinction run end to end") {
    const std::string text = R"({
      "name": "extinction",
      "params": {"r": 0.8, "d": 0.4, "gamma": 0.3, "beta": 0.02,
                 "delta1": 1.0, "delta2": 1.0, "K": 100.0, "p0": 0.0},
      "initial": {"S": 60.0, "I": 20.0},
      "impulses": {"min_gap": 1.0, "events": [{"t": 1.0, "p": 1.0, "q": 1.0}]},
      "horizon": 5.0
    })";
    const Scenario sc = parse_scenario(text);
    RunOptions opt;
    opt.out_dir = std::filesystem::temp_directory_path() / "sisim_ext";
    const RunReport report = run_scenario(sc, opt);
    CHECK_FALSE(report.failed());
    CHECK(report.impulse_count == 1);
    const std::string csv = read_file(opt.out_dir / "trajectory.csv");
    CHECK(csv.find("5,0,0,0,none") != std::string::npos);
    std::filesystem::remove_all(opt.out_dir);
}

TEST_CASE("periodic-capacity run reports the verdict") {
    const std::string text = R"({
      "name": "periodic",
      "params": {"r": 1.0, "d": 0.5, "gamma": 0.0, "beta": 0.0,
                 "delta1": {"type": "sum", "terms": [1.0,
                    {"type": "sinusoid", "mean": 0.0, "amplitude": 0.3,
                     "period": 2.0, "phase": 0.0}]},
                 "delta2": 1.0, "K": 100.0, "p0": 0.0},
      "initial": {"S": 95.0, "I": 0.0},
      "horizon": 40.0,
      "analysis": {"capacity_period": 2.0}
    })";
    const Scenario sc = parse_scenario(text);
    RunOptions opt;
    opt.write_outputs = false;
    const RunReport report = run_scenario(sc, opt);
    REQUIRE(report.periodicity.has_value());
    CHECK(report.periodicity->periodic);
    CHECK_FALSE(report.failed());
}

TEST_CASE("integration failure still writes partial artifacts") {
    // susceptible growth above capacity with negative r blows up in finite
    // time (quadratic growth), stalling the step controller
    Scenario sc = parse_scenario(minimal_scenario_json());
    sc.params.r = scaled(-1.0, constant(1.0));
    sc.initial = {200.0, 0.0};
    sc.horizon = 2.0;
    RunOptions opt;
    opt.out_dir = std::filesystem::temp_directory_path() / "sisim_abort";
    bool aborted = false;
    try {
        run_scenario(sc, opt);
    } catch (const IntegrationAbort& ex) {
        aborted = true;
        CHECK(ex.last_time() > 0.5);
        CHECK(ex.last_time() < 1.0);
        REQUIRE(ex.partial() != nullptr);
        CHECK(ex.partial()->end_time() == ex.last_time());
    }
    CHECK(aborted);
    CHECK(std::filesystem::exists(opt.out_dir / "trajectory.csv"));
    CHECK(std::filesystem::exists(opt.out_dir / "report.json"));
    std::filesystem::remove_all(opt.out_dir);
}

TEST_CASE("exit contract flags reconstruction residuals above tolerance") {
    Scenario sc = parse_scenario(minimal_scenario_json());
    sc.thresholds.oracle_tol_N = 1e-30; // unreachable on purpose
    RunOptions opt;
    opt.write_outputs = false;
    const RunReport report = run_scenario(sc, opt);
    CHECK(report.failed());
    CHECK_FALSE(report.checks.any_violation());
}

TEST_CASE("analysis-only run skips integration") {
    const Scenario sc = parse_scenario(minimal_scenario_json());
    RunOptions opt;
    opt.write_outputs = false;
    opt.integrate = false;
    const RunReport report = run_scenario(sc, opt);
    CHECK_FALSE(report.integrated);
    CHECK_FALSE(report.oracles.evaluated);
    CHECK(report.checks.entries.empty());
    CHECK(report.limits.complete());
}

} // TEST_SUITE
