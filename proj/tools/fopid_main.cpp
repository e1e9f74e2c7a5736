// fopid: fractional-order PID design by dominant pole placement.
//
//   fopid design   --config problem.json [--out report.json] [--csv best.csv]
//   fopid evaluate --config problem.json --kp .. --ti .. --td .. [--lambda ..] [--delta ..]
//   fopid simulate --config problem.json --kp .. --ti .. --td .. --csv out.csv
//   fopid report   a.json b.json ... [--json tables.json]
//
// Exit codes: 0 spec met / success, 1 spec not met, 2 no convergence, 3 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fopid/design.hpp"
#include "fopid/errors.hpp"
#include "fopid/report.hpp"
#include "fopid/serialization.hpp"

namespace {

using nlohmann::json;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fopid::InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw fopid::InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw fopid::InputError("cannot write '" + path + "'");
    out << text;
}

/// Problem-file fields that plain flags may override.
struct Overrides {
    std::string mp;
    std::optional<double> t_rise;
    std::string mode;
    std::string algorithm;
    std::string bound_handling;
    std::optional<std::size_t> restarts;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::optional<double> step_h;
    std::optional<double> horizon;
};

void add_spec_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--mp", o.mp, "Peak overshoot: fraction (0.1) or percent (10%)");
    cmd->add_option("--t-rise", o.t_rise, "Rise time in seconds");
}

void add_sim_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--step-h", o.step_h, "Simulation step in seconds");
    cmd->add_option("--horizon", o.horizon, "Simulation horizon in seconds");
}

/// Loads the plant from --plant (transfer-function JSON) or from --config.
fopid::FractionalTransferFunction load_plant(const std::string& config_path,
                                             const std::string& plant_path) {
    if (!plant_path.empty()) {
        return fopid::transfer_function_from_json(read_json(plant_path));
    }
    if (config_path.empty()) throw fopid::InputError("need --config or --plant");
    const auto j = read_json(config_path);
    if (!j.contains("plant")) throw fopid::InputError("'" + config_path + "' has no plant");
    return fopid::transfer_function_from_json(j["plant"]);
}

std::optional<fopid::DesignSpec> load_spec(const std::string& config_path,
                                           const Overrides& o) {
    std::optional<fopid::DesignSpec> spec;
    if (!config_path.empty()) {
        const auto j = read_json(config_path);
        if (j.contains("spec")) spec = fopid::design_problem_from_json(j).spec;
    }
    if (!o.mp.empty() || o.t_rise) {
        if (!spec) spec = fopid::DesignSpec{};
        if (!o.mp.empty()) spec->mp = fopid::parse_overshoot(o.mp);
        if (o.t_rise) spec->t_rise = *o.t_rise;
    }
    if (spec) spec->validate();
    return spec;
}

struct ControllerFlags {
    double kp = 0.0;
    double ti = 0.0;
    double td = 0.0;
    double lambda = 1.0;
    double delta = 1.0;

    fopid::ControllerParams params() const {
        fopid::ControllerParams p{kp, ti, td, lambda, delta};
        p.validate();
        return p;
    }
};

void add_controller_flags(CLI::App* cmd, ControllerFlags& c, bool required) {
    auto* kp = cmd->add_option("--kp", c.kp, "Proportional gain Kp");
    auto* ti = cmd->add_option("--ti", c.ti, "Integral gain Ti");
    auto* td = cmd->add_option("--td", c.td, "Derivative gain Td");
    cmd->add_option("--lambda", c.lambda, "Integral order lambda")->capture_default_str();
    cmd->add_option("--delta", c.delta, "Derivative order delta")->capture_default_str();
    if (required) {
        kp->required();
        ti->required();
        td->required();
    }
}

int run_design(const std::string& config_path, const Overrides& o, const std::string& out_path,
               const std::string& csv_path, const std::string& trace_dir, bool quiet) {
    auto j = read_json(config_path);
    if (!o.mp.empty()) j["spec"]["mp"] = o.mp;
    if (o.t_rise) j["spec"]["t_rise"] = *o.t_rise;
    if (!o.mode.empty()) j["mode"] = o.mode;
    if (!o.algorithm.empty()) j["algorithm"] = o.algorithm;
    if (!o.bound_handling.empty()) j["optimizer"]["bound_handling"] = o.bound_handling;
    if (o.restarts) j["restarts"] = *o.restarts;
    if (o.seed) j["seed"] = *o.seed;
    if (o.threads) j["threads"] = *o.threads;
    if (o.step_h) j["simulation"]["step_h"] = *o.step_h;
    if (o.horizon) j["simulation"]["horizon"] = *o.horizon;

    const auto problem = fopid::design_problem_from_json(j);
    const auto report = fopid::design(problem);
    const std::string document = fopid::to_json(report).dump(2) + "\n";

    if (out_path.empty()) {
        std::cout << document;
    } else {
        write_text(out_path, document);
    }

    if (!trace_dir.empty()) {
        std::filesystem::create_directories(trace_dir);
        for (std::size_t k = 0; k < report.all_runs.size(); ++k) {
            std::ofstream trace(std::filesystem::path(trace_dir) /
                                ("run_" + std::to_string(k) + ".csv"));
            fopid::write_trace_csv(trace, report.all_runs[k].best_fitness_trace);
        }
    }
    if (!csv_path.empty() && report.selected) {
        const auto outcome = fopid::simulate(problem.plant, report.selected, report.simulation);
        std::ofstream csv(csv_path);
        fopid::write_response_csv(csv, outcome.response);
    }

    if (!quiet) {
        const auto tables = fopid::report_tables(std::span(&report, 1));
        std::cerr << tables.text;
    }
    return fopid::exit_code(report);
}

int run_evaluate(const std::string& config_path, const std::string& plant_path,
                 const Overrides& o, const ControllerFlags& c,
                 const std::optional<double>& pole_re, const std::optional<double>& pole_im) {
    const auto plant = load_plant(config_path, plant_path);
    fopid::Complex pole;
    if (pole_re || pole_im) {
        pole = {pole_re.value_or(0.0), pole_im.value_or(0.0)};
    } else {
        const auto spec = load_spec(config_path, o);
        if (!spec) throw fopid::InputError("need a spec (--mp/--t-rise or config) or --pole-re/--pole-im");
        pole = fopid::dominant_poles(fopid::damping_from_spec(*spec)).p1;
    }
    const auto r = fopid::evaluate(plant, c.params(), pole);
    json out = fopid::to_json(r);
    out["pole"] = {pole.real(), pole.imag()};
    std::cout << out.dump(2) << "\n";
    return fopid::kExitSpecMet;
}

int run_simulate(const std::string& config_path, const std::string& plant_path,
                 const Overrides& o, const ControllerFlags& c, bool open_loop,
                 const std::string& csv_path) {
    const auto plant = load_plant(config_path, plant_path);
    fopid::SimulationConfig sim;
    if (!config_path.empty()) {
        const auto j = read_json(config_path);
        if (j.contains("spec")) {
            const auto problem = fopid::design_problem_from_json(j);
            sim = fopid::resolve_simulation(problem.simulation,
                                            fopid::damping_from_spec(problem.spec));
        }
    }
    if (o.step_h) sim.step_h = *o.step_h;
    if (o.horizon) sim.horizon = *o.horizon;

    const auto params = open_loop ? std::nullopt : std::optional(c.params());
    const auto outcome = fopid::simulate(plant, params, sim);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw fopid::InputError("cannot write '" + csv_path + "'");
        fopid::write_response_csv(csv, outcome.response);
    } else {
        fopid::write_response_csv(std::cout, outcome.response);
    }

    json summary = {{"step_h", sim.step_h}, {"horizon", sim.horizon}};
    summary["steady_state"] = outcome.response.steady_state
                                  ? json(*outcome.response.steady_state)
                                  : json("unbounded");
    summary["metrics"] = outcome.metrics ? fopid::to_json(*outcome.metrics) : json(nullptr);
    if (!outcome.diagnostic.empty()) summary["diagnostic"] = outcome.diagnostic;
    std::cerr << summary.dump(2) << "\n";
    return fopid::kExitSpecMet;
}

int run_report(const std::vector<std::string>& inputs, const std::string& json_path) {
    std::vector<fopid::DesignReport> reports;
    for (const auto& path : inputs) {
        reports.push_back(fopid::design_report_from_json(read_json(path)));
    }
    const auto tables = fopid::report_tables(reports);
    std::cout << tables.text;
    if (!json_path.empty()) write_text(json_path, tables.json.dump(2) + "\n");
    return fopid::kExitSpecMet;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional-order PID design by dominant pole placement"};
    app.require_subcommand(1);

    Overrides overrides;
    ControllerFlags controller;
    std::string config_path;
    std::string plant_path;
    std::string out_path;
    std::string csv_path;
    std::string trace_dir;
    std::string json_path;
    std::vector<std::string> report_inputs;
    std::optional<double> pole_re;
    std::optional<double> pole_im;
    bool quiet = false;
    bool open_loop = false;

    auto* design = app.add_subcommand("design", "Synthesize a controller from a problem file");
    design->add_option("--config", config_path, "Problem JSON file")->required();
    add_spec_flags(design, overrides);
    design->add_option("--mode", overrides.mode, "fractional or integer");
    design->add_option("--algorithm", overrides.algorithm, "pso or de");
    design->add_option("--bound-handling", overrides.bound_handling,
                       "clamp, reflect, resample or bounce (both optimizers)");
    design->add_option("--restarts", overrides.restarts, "Independent optimizer runs");
    design->add_option("--seed", overrides.seed, "Base seed (fixes the whole report)");
    design->add_option("--threads", overrides.threads, "Worker threads, 0 = all cores");
    add_sim_flags(design, overrides);
    design->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    design->add_option("--csv", csv_path, "Step response of the selected design (time,output)");
    design->add_option("--trace-dir", trace_dir, "Per-run convergence traces (iteration,best_fitness)");
    design->add_flag("--quiet", quiet, "Do not print the summary table");

    auto* evaluate = app.add_subcommand("evaluate", "Residual of a controller at the dominant pole");
    evaluate->add_option("--config", config_path, "Problem JSON file (plant and spec)");
    evaluate->add_option("--plant", plant_path, "Plant transfer-function JSON file");
    add_spec_flags(evaluate, overrides);
    add_controller_flags(evaluate, controller, true);
    evaluate->add_option("--pole-re", pole_re, "Evaluate at this pole instead of the spec's p1");
    evaluate->add_option("--pole-im", pole_im, "Imaginary part of the pole");

    auto* simulate = app.add_subcommand("simulate", "Closed-loop (or open-loop) unit-step response");
    simulate->add_option("--config", config_path, "Problem JSON file (plant, spec, simulation)");
    simulate->add_option("--plant", plant_path, "Plant transfer-function JSON file");
    add_controller_flags(simulate, controller, false);
    add_sim_flags(simulate, overrides);
    simulate->add_flag("--open-loop", open_loop, "Simulate the plant without a controller");
    simulate->add_option("--csv", csv_path, "Output CSV (default stdout)");

    auto* report = app.add_subcommand("report", "Tabulate one or more design reports");
    report->add_option("reports", report_inputs, "Design report JSON files")->required();
    report->add_option("--json", json_path, "Also write the tables as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : fopid::kExitInputError;
    }

    try {
        if (design->parsed()) {
            return run_design(config_path, overrides, out_path, csv_path, trace_dir, quiet);
        }
        if (evaluate->parsed()) {
            return run_evaluate(config_path, plant_path, overrides, controller, pole_re, pole_im);
        }
        if (simulate->parsed()) {
            return run_simulate(config_path, plant_path, overrides, controller, open_loop,
                                csv_path);
        }
        return run_report(report_inputs, json_path);
    } catch (const fopid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fopid::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fopid::kExitInputError;
    }
}
