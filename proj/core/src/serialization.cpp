#include "fopid/serialization.hpp"

#include <ostream>
#include <set>
#include <string>

#include "fopid/errors.hpp"

namespace fopid {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* where) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!keys.contains(key)) {
            throw InputError(std::string(where) + ": unknown key '" + key + "'");
        }
    }
}

const json& require(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string(where) + ": missing '" + key + "'");
    }
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
    return j.get<double>();
}

std::size_t count(const json& j, const char* what) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
        throw InputError(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

FractionalPolynomial polynomial_from_json(const json& j, const char* where) {
    if (!j.is_array()) throw InputError(std::string(where) + " must be an array of [c, a]");
    std::vector<Term> terms;
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2) {
            throw InputError(std::string(where) + " entries must be [coefficient, exponent]");
        }
        terms.push_back({number(pair[0], "coefficient"), number(pair[1], "exponent")});
    }
    try {
        return FractionalPolynomial(std::move(terms));
    } catch (const DomainError& e) {
        throw InputError(std::string(where) + ": " + e.what());
    }
}

json polynomial_to_json(const FractionalPolynomial& p) {
    json out = json::array();
    for (const auto& t : p.terms()) out.push_back({t.coefficient, t.exponent});
    return out;
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

} // namespace

json to_json(const FractionalTransferFunction& tf) {
    return {{"num", polynomial_to_json(tf.numerator())},
            {"den", polynomial_to_json(tf.denominator())}};
}

FractionalTransferFunction transfer_function_from_json(const json& j) {
    if (!j.is_object()) throw InputError("transfer function must be an object");
    reject_unknown(j, {"num", "den"}, "transfer function");
    auto num = polynomial_from_json(require(j, "num", "transfer function"), "num");
    auto den = polynomial_from_json(require(j, "den", "transfer function"), "den");
    try {
        return {std::move(num), std::move(den)};
    } catch (const CompositionError& e) {
        throw InputError(e.what());
    }
}

json to_json(const ControllerParams& p) {
    return {{"kp", p.kp}, {"ti", p.ti}, {"td", p.td}, {"lambda", p.lambda}, {"delta", p.delta}};
}

ControllerParams controller_params_from_json(const json& j) {
    if (!j.is_object()) throw InputError("controller parameters must be an object");
    reject_unknown(j, {"kp", "ti", "td", "lambda", "delta"}, "controller");
    ControllerParams p;
    p.kp = number(require(j, "kp", "controller"), "kp");
    p.ti = number(require(j, "ti", "controller"), "ti");
    p.td = number(require(j, "td", "controller"), "td");
    if (j.contains("lambda")) p.lambda = number(j["lambda"], "lambda");
    if (j.contains("delta")) p.delta = number(j["delta"], "delta");
    p.validate();
    return p;
}

json to_json(const ResidualBreakdown& r) {
    return {{"r", r.r}, {"i", r.i}, {"p", r.p}, {"f", r.f}};
}

json to_json(const ResponseMetrics& m) {
    return {{"overshoot_fraction", m.overshoot_fraction},
            {"peak_value", m.peak_value},
            {"peak_time", m.peak_time},
            {"rise_time", optional_number(m.rise_time)},
            {"rise_time_10_90", optional_number(m.rise_time_10_90)},
            {"settled", m.settled}};
}

json to_json(const RunResult& run, bool include_trace) {
    json out = {{"seed", run.seed},
                {"converged", run.converged},
                {"best_fitness", run.best_fitness},
                {"iterations_used", run.iterations_used},
                {"best_position", run.best_position}};
    if (include_trace) out["best_fitness_trace"] = run.best_fitness_trace;
    return out;
}

namespace {

DesignProblem parse_problem(const json& j) {
    if (!j.is_object()) throw InputError("design problem must be a JSON object");
    reject_unknown(j,
                   {"plant", "spec", "mode", "algorithm", "restarts", "seed", "threads",
                    "weights", "optimizer", "simulation"},
                   "design problem");

    DesignProblem problem{.plant = transfer_function_from_json(require(j, "plant", "design problem"))};

    const auto& spec = require(j, "spec", "design problem");
    reject_unknown(spec, {"mp", "t_rise"}, "spec");
    const auto& mp = require(spec, "mp", "spec");
    if (mp.is_string()) {
        problem.spec.mp = parse_overshoot(mp.get<std::string>());
    } else {
        problem.spec.mp = number(mp, "spec.mp");
    }
    problem.spec.t_rise = number(require(spec, "t_rise", "spec"), "spec.t_rise");

    if (j.contains("mode")) problem.mode = parse_controller_mode(j["mode"].get<std::string>());
    if (j.contains("algorithm")) {
        problem.algorithm = parse_algorithm(j["algorithm"].get<std::string>());
    }
    if (j.contains("restarts")) problem.restarts = count(j["restarts"], "restarts");
    if (j.contains("seed")) problem.seed = count(j["seed"], "seed");
    if (j.contains("threads")) problem.threads = count(j["threads"], "threads");
    if (j.contains("weights")) {
        const auto& w = j["weights"];
        if (!w.is_array() || w.size() != 3) throw InputError("weights must be [w_r, w_i, w_p]");
        problem.weights = {number(w[0], "w_r"), number(w[1], "w_i"), number(w[2], "w_p")};
    }
    if (j.contains("optimizer")) {
        const auto& o = j["optimizer"];
        reject_unknown(o,
                       {"population", "max_iters", "tolerance", "omega", "c1", "c2", "vmax",
                        "f_scale", "cr", "bound_handling"},
                       "optimizer");
        if (o.contains("population")) {
            problem.pso.population = problem.de.population = count(o["population"], "population");
        }
        if (o.contains("max_iters")) {
            problem.pso.max_iters = problem.de.max_iters = count(o["max_iters"], "max_iters");
        }
        if (o.contains("tolerance")) {
            problem.pso.tolerance = problem.de.tolerance = number(o["tolerance"], "tolerance");
        }
        if (o.contains("omega")) problem.pso.omega = number(o["omega"], "omega");
        if (o.contains("c1")) problem.pso.c1 = number(o["c1"], "c1");
        if (o.contains("c2")) problem.pso.c2 = number(o["c2"], "c2");
        if (o.contains("vmax")) {
            for (const auto& v : o["vmax"]) problem.pso.vmax.push_back(number(v, "vmax"));
        }
        if (o.contains("f_scale")) problem.de.f_scale = number(o["f_scale"], "f_scale");
        if (o.contains("cr")) problem.de.cr = number(o["cr"], "cr");
        if (o.contains("bound_handling")) {
            problem.pso.bound_handling = problem.de.bound_handling =
                parse_bound_handling(o["bound_handling"].get<std::string>());
        }
    }
    if (j.contains("simulation")) {
        const auto& s = j["simulation"];
        reject_unknown(s, {"step_h", "horizon", "memory_length"}, "simulation");
        if (s.contains("step_h")) problem.simulation.step_h = number(s["step_h"], "step_h");
        if (s.contains("horizon")) problem.simulation.horizon = number(s["horizon"], "horizon");
        if (s.contains("memory_length")) {
            problem.simulation.memory_length = count(s["memory_length"], "memory_length");
        }
    }
    problem.validate();
    return problem;
}

} // namespace

DesignProblem design_problem_from_json(const json& j) {
    try {
        return parse_problem(j);
    } catch (const json::exception& e) {
        throw InputError(std::string("design problem: ") + e.what());
    }
}

json to_json(const DesignReport& report) {
    json runs = json::array();
    for (const auto& run : report.all_runs) runs.push_back(to_json(run));

    json candidates = json::array();
    for (const auto& c : report.candidates) {
        candidates.push_back({{"run", c.run_index},
                              {"params", to_json(c.params)},
                              {"residual", to_json(c.residual)},
                              {"metrics", c.metrics ? to_json(*c.metrics) : json(nullptr)},
                              {"spec_met", c.spec_met},
                              {"diagnostic", c.diagnostic}});
    }

    json selected = nullptr;
    if (report.selected) {
        selected = {{"run", *report.selected_run},
                    {"params", to_json(*report.selected)},
                    {"residual", to_json(*report.residual)},
                    {"metrics", to_json(*report.metrics)}};
    }

    return {{"spec", {{"mp", report.spec.mp}, {"t_rise", report.spec.t_rise}}},
            {"mode", to_string(report.mode)},
            {"algorithm", to_string(report.algorithm)},
            {"seed", report.seed},
            {"tolerance", report.tolerance},
            {"damping", {{"zeta", report.damping.zeta}, {"omega_n", report.damping.omega_n}}},
            {"poles", {{"p1", complex_to_json(report.poles.p1)},
                       {"p2", complex_to_json(report.poles.p2)}}},
            {"simulation", {{"step_h", report.simulation.step_h},
                            {"horizon", report.simulation.horizon},
                            {"memory_length", report.simulation.memory_length}}},
            {"runs", std::move(runs)},
            {"candidates", std::move(candidates)},
            {"selected", std::move(selected)},
            {"spec_met", report.spec_met},
            {"diagnostic", report.diagnostic}};
}

namespace {

ResidualBreakdown residual_from_json(const json& j) {
    return {number(require(j, "r", "residual"), "r"), number(require(j, "i", "residual"), "i"),
            number(require(j, "p", "residual"), "p"), number(require(j, "f", "residual"), "f")};
}

std::optional<double> optional_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return number(j[key], key);
}

ResponseMetrics metrics_from_json(const json& j) {
    ResponseMetrics m;
    m.overshoot_fraction = number(require(j, "overshoot_fraction", "metrics"), "overshoot");
    m.peak_value = number(require(j, "peak_value", "metrics"), "peak_value");
    m.peak_time = number(require(j, "peak_time", "metrics"), "peak_time");
    m.rise_time = optional_from_json(j, "rise_time");
    m.rise_time_10_90 = optional_from_json(j, "rise_time_10_90");
    m.settled = require(j, "settled", "metrics").get<bool>();
    return m;
}

} // namespace

DesignReport design_report_from_json(const json& j) {
    try {
        DesignReport r;
        const auto& spec = require(j, "spec", "report");
        r.spec = {number(require(spec, "mp", "spec"), "mp"),
                  number(require(spec, "t_rise", "spec"), "t_rise")};
        r.mode = parse_controller_mode(require(j, "mode", "report").get<std::string>());
        r.algorithm = parse_algorithm(require(j, "algorithm", "report").get<std::string>());
        r.seed = require(j, "seed", "report").get<std::uint64_t>();
        r.tolerance = number(require(j, "tolerance", "report"), "tolerance");
        const auto& damping = require(j, "damping", "report");
        r.damping = {number(damping["zeta"], "zeta"), number(damping["omega_n"], "omega_n")};
        r.poles = dominant_poles(r.damping);
        for (const auto& run : require(j, "runs", "report")) {
            RunResult rr;
            rr.seed = run.at("seed").get<std::uint64_t>();
            rr.converged = run.at("converged").get<bool>();
            rr.best_fitness = number(run.at("best_fitness"), "best_fitness");
            rr.iterations_used = run.at("iterations_used").get<std::size_t>();
            rr.best_position = run.at("best_position").get<std::vector<double>>();
            r.all_runs.push_back(std::move(rr));
        }
        const auto& selected = require(j, "selected", "report");
        if (!selected.is_null()) {
            r.selected_run = selected.at("run").get<std::size_t>();
            r.selected = controller_params_from_json(selected.at("params"));
            r.residual = residual_from_json(selected.at("residual"));
            r.metrics = metrics_from_json(selected.at("metrics"));
        }
        r.spec_met = require(j, "spec_met", "report").get<bool>();
        r.diagnostic = require(j, "diagnostic", "report").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("report: ") + e.what());
    }
}

void write_trace_csv(std::ostream& out, std::span<const double> trace) {
    const auto precision = out.precision(17);
    out << "iteration,best_fitness\n";
    for (std::size_t k = 0; k < trace.size(); ++k) out << k << ',' << trace[k] << '\n';
    out.precision(precision);
}

} // namespace fopid
