#include "sisim/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sisim {

using json = nlohmann::ordered_json;

namespace {

json timefn_to_json(const TimeFunction& f);

struct ToJsonVisitor {
    json operator()(const Constant& c) const {
        return json{{"type", "constant"}, {"value", c.value}};
    }
    json operator()(const Sinusoid& s) const {
        return json{{"type", "sinusoid"},
                    {"mean", s.mean},
                    {"amplitude", s.amplitude},
                    {"period", s.period},
                    {"phase", s.phase}};
    }
    json operator()(const PiecewiseConstant& p) const {
        return json{{"type", "piecewise_constant"},
                    {"breakpoints", p.breakpoints},
                    {"values", p.values}};
    }
    json operator()(const PiecewiseLinear& p) const {
        json knots = json::array();
        for (const auto& [t, v] : p.knots) knots.push_back(json::array({t, v}));
        return json{{"type", "piecewise_linear"}, {"knots", knots}};
    }
    json operator()(const Sum& s) const {
        json terms = json::array();
        for (const TimeFunction& t : s.terms) terms.push_back(timefn_to_json(t));
        return json{{"type", "sum"}, {"terms", terms}};
    }
    json operator()(const Scaled& s) const {
        return json{{"type", "scaled"},
                    {"factor", s.factor},
                    {"inner", timefn_to_json(*s.inner)}};
    }
};

json timefn_to_json(const TimeFunction& f) { return std::visit(ToJsonVisitor{}, f.node); }

TimeFunction timefn_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return constant(j.get<double>());
    if (!j.is_object() || !j.contains("type"))
        throw ValidationError("parse error",
                              {where + ": a time function must be a number or a "
                                       "tagged object with a \"type\" field"});
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "constant") return constant(j.at("value").get<double>());
        if (type == "sinusoid")
            return sinusoid(j.at("mean").get<double>(), j.at("amplitude").get<double>(),
                            j.at("period").get<double>(),
                            j.value("phase", 0.0));
        if (type == "piecewise_constant")
            return piecewise_constant(j.at("breakpoints").get<std::vector<double>>(),
                                      j.at("values").get<std::vector<double>>());
        if (type == "piecewise_linear") {
            std::vector<std::pair<double, double>> knots;
            for (const json& k : j.at("knots"))
                knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
            return piecewise_linear(std::move(knots));
        }
        if (type == "sum") {
            std::vector<TimeFunction> terms;
            int i = 0;
            for (const json& t : j.at("terms"))
                terms.push_back(
                    timefn_from_json(t, where + ".terms[" + std::to_string(i++) + "]"));
            return sum(std::move(terms));
        }
        if (type == "scaled")
            return scaled(j.at("factor").get<double>(),
                          timefn_from_json(j.at("inner"), where + ".inner"));
    } catch (const std::invalid_argument& ex) {
        throw ValidationError("parse error", {where + ": " + ex.what()});
    } catch (const json::exception& ex) {
        throw ValidationError("parse error", {where + ": " + ex.what()});
    }
    throw ValidationError("parse error",
                          {where + ": unknown time function type \"" + type + "\""});
}

void check_bounded(const TimeFunction& f, double horizon, const std::string& name,
                   std::vector<std::string>& issues) {
    const FunctionBounds b = bounds_over(f, 0.0, horizon);
    if (!b.finite())
        issues.push_back(name + " must have finite bounds over [0, horizon]");
}

void check_nonnegative(const TimeFunction& f, double horizon, const std::string& name,
                       std::vector<std::string>& issues) {
    const FunctionBounds b = bounds_over(f, 0.0, horizon);
    if (b.lower < 0.0) {
        std::ostringstream msg;
        msg << name << " must be nonnegative on [0, horizon]; lower bound "
            << b.lower;
        issues.push_back(msg.str());
    }
}

} // namespace

std::vector<std::string> validate_scenario(const Scenario& sc) {
    std::vector<std::string> issues;
    const double H = sc.horizon;
    if (!(H > 0.0) || !std::isfinite(H)) {
        issues.push_back("horizon must be positive and finite");
        return issues; // bounds checks below need a horizon
    }

    const ModelParams& mp = sc.params;
    check_bounded(mp.r, H, "r", issues);
    check_bounded(mp.d, H, "d", issues);
    check_bounded(mp.gamma, H, "gamma", issues);
    check_bounded(mp.beta, H, "beta", issues);
    check_bounded(mp.delta1, H, "delta1", issues);
    check_bounded(mp.delta2, H, "delta2", issues);
    check_bounded(mp.K, H, "K", issues);
    check_bounded(mp.p0, H, "p0", issues);

    check_nonnegative(mp.d, H, "d", issues);
    check_nonnegative(mp.beta, H, "beta", issues);
    check_nonnegative(mp.delta1, H, "delta1", issues);
    check_nonnegative(mp.delta2, H, "delta2", issues);
    if (!sc.allow_negative_gamma) check_nonnegative(mp.gamma, H, "gamma", issues);

    if (!(mp.eps0 > 0.0)) issues.push_back("eps0 must be strictly positive");

    const FunctionBounds kb = bounds_over(mp.K, 0.0, H);
    const FunctionBounds pb = bounds_over(mp.p0, 0.0, H);
    if (!(kb.lower > 0.0)) {
        std::ostringstream msg;
        msg << "capacity baseline K must be strictly positive; lower bound "
            << kb.lower;
        issues.push_back(msg.str());
    } else if (kb.lower < mp.eps0) {
        std::ostringstream msg;
        msg << "capacity baseline K (lower bound " << kb.lower
            << ") must stay at or above the floor eps0 = " << mp.eps0;
        issues.push_back(msg.str());
    } else {
        const double K0 = kb.lower - mp.eps0;
        if (pb.upper > K0) {
            std::ostringstream msg;
            msg << "capacity oscillation p0 (upper bound " << pb.upper
                << ") must not exceed the baseline margin " << K0;
            issues.push_back(msg.str());
        }
        if (kb.lower + pb.lower < mp.eps0) {
            std::ostringstream msg;
            msg << "carrying capacity K + p0 can dip to " << kb.lower + pb.lower
                << ", below the floor eps0 = " << mp.eps0;
            issues.push_back(msg.str());
        }
    }

    if (sc.initial.S < 0.0) issues.push_back("initial S must be nonnegative");
    if (sc.initial.I < 0.0) issues.push_back("initial I must be nonnegative");

    for (const ScheduleViolation& v : validate_schedule(sc.schedule))
        issues.push_back("impulse schedule: " + v.message);

    if (!(sc.tolerances.rel > 0.0) || !(sc.tolerances.abs > 0.0))
        issues.push_back("integration tolerances must be positive");
    for (double t : sc.output_grid)
        if (t < 0.0 || t > H) {
            issues.push_back("output grid times must lie in [0, horizon]");
            break;
        }
    if (sc.analysis.capacity_period && !(*sc.analysis.capacity_period > 0.0))
        issues.push_back("capacity period must be positive");
    return issues;
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw ValidationError("parse error", {ex.what()});
    }

    Scenario sc;
    try {
        sc.name = j.value("name", std::string{});
        sc.horizon = j.at("horizon").get<double>();

        const json& params = j.at("params");
        sc.params.r = timefn_from_json(params.at("r"), "params.r");
        sc.params.d = timefn_from_json(params.at("d"), "params.d");
        sc.params.gamma = timefn_from_json(params.at("gamma"), "params.gamma");
        sc.params.beta = timefn_from_json(params.at("beta"), "params.beta");
        sc.params.delta1 = timefn_from_json(params.at("delta1"), "params.delta1");
        sc.params.delta2 = timefn_from_json(params.at("delta2"), "params.delta2");
        sc.params.K = timefn_from_json(params.at("K"), "params.K");
        sc.params.p0 = timefn_from_json(params.at("p0"), "params.p0");
        sc.params.eps0 = params.value("eps0", 1e-6);

        sc.initial.S = j.at("initial").at("S").get<double>();
        sc.initial.I = j.at("initial").at("I").get<double>();

        if (j.contains("impulses")) {
            const json& imp = j.at("impulses");
            sc.schedule.min_gap = imp.value("min_gap", 1.0);
            if (imp.contains("events"))
                for (const json& e : imp.at("events"))
                    sc.schedule.events.push_back({e.at("t").get<double>(),
                                                  e.value("p", 0.0),
                                                  e.value("q", 0.0)});
        }
        if (j.contains("tolerances")) {
            sc.tolerances.rel = j.at("tolerances").value("rel", 1e-8);
            sc.tolerances.abs = j.at("tolerances").value("abs", 1e-10);
        }
        if (j.contains("output")) {
            const json& out = j.at("output");
            if (out.contains("grid"))
                sc.output_grid = out.at("grid").get<std::vector<double>>();
            else if (out.contains("dt")) {
                const double dt = out.at("dt").get<double>();
                if (dt > 0.0)
                    for (double t = 0.0; t <= sc.horizon + 1e-12 * sc.horizon; t += dt)
                        sc.output_grid.push_back(std::min(t, sc.horizon));
            }
        } else if (sc.horizon > 0.0) {
            for (int i = 0; i <= 200; ++i)
                sc.output_grid.push_back(
                    std::min(sc.horizon, sc.horizon * static_cast<double>(i) / 200.0));
        }
        sc.allow_negative_gamma = j.value("allow_negative_gamma", false);

        if (j.contains("checks")) {
            const json& checks = j.at("checks");
            if (checks.is_string() && checks.get<std::string>() == "all") {
                sc.checks.all = true;
            } else if (checks.is_array()) {
                sc.checks.all = false;
                for (const json& c : checks)
                    sc.checks.ids.push_back(c.get<std::string>());
            }
        }
        if (j.contains("thresholds")) {
            const json& th = j.at("thresholds");
            Thresholds& t = sc.thresholds;
            t.class_tol = th.value("class_tol", t.class_tol);
            t.limit_tol = th.value("limit_tol", t.limit_tol);
            t.slope_tol = th.value("slope_tol", t.slope_tol);
            t.quad_tol = th.value("quad_tol", t.quad_tol);
            t.neg_tol_scale = th.value("neg_tol_scale", t.neg_tol_scale);
            t.tail_fraction = th.value("tail_fraction", t.tail_fraction);
            t.ext_tol = th.value("ext_tol", t.ext_tol);
            t.growth_tol = th.value("growth_tol", t.growth_tol);
            t.osc_tol = th.value("osc_tol", t.osc_tol);
            t.inv_tol = th.value("inv_tol", t.inv_tol);
            t.unbounded_factor = th.value("unbounded_factor", t.unbounded_factor);
            t.oracle_tol_I = th.value("oracle_tol_I", t.oracle_tol_I);
            t.oracle_tol_N = th.value("oracle_tol_N", t.oracle_tol_N);
            t.oracle_tol_psi = th.value("oracle_tol_psi", t.oracle_tol_psi);
            t.periodic_residual_factor =
                th.value("periodic_residual_factor", t.periodic_residual_factor);
        }
        if (j.contains("analysis")) {
            const json& an = j.at("analysis");
            if (an.contains("capacity_period"))
                sc.analysis.capacity_period = an.at("capacity_period").get<double>();
            if (an.contains("tail_window")) {
                const json& w = an.at("tail_window");
                sc.analysis.tail_window =
                    std::make_pair(w.at(0).get<double>(), w.at(1).get<double>());
            }
            sc.analysis.probe_count = an.value("probe_count", 10);
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const json::exception& ex) {
        throw ValidationError("parse error", {ex.what()});
    } catch (const std::invalid_argument& ex) {
        throw ValidationError("parse error", {ex.what()});
    }

    std::vector<std::string> issues = validate_scenario(sc);
    if (!issues.empty()) throw ValidationError("scenario rejected", std::move(issues));
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open scenario file",
                              {"cannot open " + path.string()});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
    json j;
    if (!sc.name.empty()) j["name"] = sc.name;
    j["params"] = json{{"r", timefn_to_json(sc.params.r)},
                       {"d", timefn_to_json(sc.params.d)},
                       {"gamma", timefn_to_json(sc.params.gamma)},
                       {"beta", timefn_to_json(sc.params.beta)},
                       {"delta1", timefn_to_json(sc.params.delta1)},
                       {"delta2", timefn_to_json(sc.params.delta2)},
                       {"K", timefn_to_json(sc.params.K)},
                       {"p0", timefn_to_json(sc.params.p0)},
                       {"eps0", sc.params.eps0}};
    j["initial"] = json{{"S", sc.initial.S}, {"I", sc.initial.I}};
    if (!sc.schedule.events.empty() || sc.schedule.min_gap != 1.0) {
        json events = json::array();
        for (const ImpulseEvent& e : sc.schedule.events)
            events.push_back(json{{"t", e.t}, {"p", e.p}, {"q", e.q}});
        j["impulses"] = json{{"min_gap", sc.schedule.min_gap}, {"events", events}};
    }
    j["horizon"] = sc.horizon;
    j["tolerances"] = json{{"rel", sc.tolerances.rel}, {"abs", sc.tolerances.abs}};
    j["output"] = json{{"grid", sc.output_grid}};
    if (sc.allow_negative_gamma) j["allow_negative_gamma"] = true;
    if (sc.checks.all) j["checks"] = "all";
    else j["checks"] = sc.checks.ids;
    const Thresholds def;
    if (!(sc.thresholds == def)) {
        j["thresholds"] = json{{"class_tol", sc.thresholds.class_tol},
                               {"limit_tol", sc.thresholds.limit_tol},
                               {"slope_tol", sc.thresholds.slope_tol},
                               {"quad_tol", sc.thresholds.quad_tol},
                               {"neg_tol_scale", sc.thresholds.neg_tol_scale},
                               {"tail_fraction", sc.thresholds.tail_fraction},
                               {"ext_tol", sc.thresholds.ext_tol},
                               {"growth_tol", sc.thresholds.growth_tol},
                               {"osc_tol", sc.thresholds.osc_tol},
                               {"inv_tol", sc.thresholds.inv_tol},
                               {"unbounded_factor", sc.thresholds.unbounded_factor},
                               {"oracle_tol_I", sc.thresholds.oracle_tol_I},
                               {"oracle_tol_N", sc.thresholds.oracle_tol_N},
                               {"oracle_tol_psi", sc.thresholds.oracle_tol_psi},
                               {"periodic_residual_factor",
                                sc.thresholds.periodic_residual_factor}};
    }
    json an;
    if (sc.analysis.capacity_period) an["capacity_period"] = *sc.analysis.capacity_period;
    if (sc.analysis.tail_window)
        an["tail_window"] =
            json::array({sc.analysis.tail_window->first, sc.analysis.tail_window->second});
    an["probe_count"] = sc.analysis.probe_count;
    j["analysis"] = an;
    return j.dump(2);
}

} // namespace sisim
