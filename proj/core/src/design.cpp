#include "fopid/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "fopid/errors.hpp"

namespace fopid {

void DesignProblem::validate() const {
    spec.validate();
    if (restarts == 0) throw ConfigError("design: restarts must be at least 1");
    if (pso.population < 2) throw ConfigError("design: PSO population must be at least 2");
    if (de.population < 4) throw ConfigError("design: DE population must be at least 4");
    for (double w : {weights.real, weights.imag, weights.angle}) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ConfigError("design: residual weights must be finite and non-negative");
        }
    }
    if (simulation.step_h && !(*simulation.step_h > 0.0)) {
        throw ConfigError("design: simulation step_h must be positive");
    }
    if (simulation.horizon && !(*simulation.horizon > 0.0)) {
        throw ConfigError("design: simulation horizon must be positive");
    }
}

bool meets_spec(const ResponseMetrics& metrics, const DesignSpec& spec) noexcept {
    return metrics.overshoot_fraction <= spec.mp && metrics.rise_time &&
           *metrics.rise_time <= spec.t_rise;
}

SimulationConfig resolve_simulation(const SimulationOverrides& overrides,
                                    const DampingSpec& damping) {
    SimulationConfig config;
    config.step_h = overrides.step_h.value_or(config.step_h);
    config.horizon = overrides.horizon.value_or(default_horizon(damping));
    config.memory_length = overrides.memory_length;
    config.validate();
    return config;
}

namespace {

CandidateEvaluation evaluate_candidate(const DesignProblem& problem,
                                       const DominantPoles& poles,
                                       const Objective& objective,
                                       const SimulationConfig& sim,
                                       const RunResult& run, std::size_t index) {
    CandidateEvaluation c;
    c.run_index = index;
    c.params = objective.to_params(run.best_position);
    c.residual = residual(problem.plant, poles.p1, c.params);
    try {
        const auto loop = closed_loop(problem.plant, controller_tf(c.params));
        const auto response = simulate_step(loop, sim);
        c.metrics = measure_metrics(response);
        c.spec_met = meets_spec(*c.metrics, problem.spec);
    } catch (const Error& e) {
        c.metrics.reset();
        c.spec_met = false;
        c.diagnostic = std::string("disqualified: ") + e.what();
    }
    return c;
}

/// Lexicographic key: spec met first, then lower overshoot, then faster rise.
auto selection_key(const CandidateEvaluation& c) {
    const double rise = c.metrics->rise_time.value_or(std::numeric_limits<double>::infinity());
    return std::make_tuple(!c.spec_met, c.metrics->overshoot_fraction, rise, c.run_index);
}

} // namespace

DesignReport design(const DesignProblem& problem) {
    problem.validate();

    DesignReport report;
    report.spec = problem.spec;
    report.mode = problem.mode;
    report.algorithm = problem.algorithm;
    report.seed = problem.seed;
    report.damping = damping_from_spec(problem.spec);
    report.poles = dominant_poles(report.damping);
    report.simulation = resolve_simulation(problem.simulation, report.damping);

    const auto objective =
        make_objective(problem.plant, report.poles.p1, problem.mode, problem.weights);

    OptimizerSettings settings;
    settings.algorithm = problem.algorithm;
    settings.pso = problem.pso;
    settings.de = problem.de;
    settings.pso.seed = problem.seed;
    settings.de.seed = problem.seed;
    report.tolerance = problem.algorithm == Algorithm::pso ? settings.pso.tolerance
                                                           : settings.de.tolerance;

    std::vector<CandidateEvaluation> candidates;
    const RunSelector by_response =
        [&](std::span<const RunResult> runs) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < runs.size(); ++k) {
            if (runs[k].converged) {
                candidates.push_back(evaluate_candidate(problem, report.poles, objective,
                                                        report.simulation, runs[k], k));
            }
        }
        const CandidateEvaluation* best = nullptr;
        for (const auto& c : candidates) {
            if (!c.metrics) continue;
            if (!best || selection_key(c) < selection_key(*best)) best = &c;
        }
        if (!best) return std::nullopt;
        return best->run_index;
    };

    auto batch = multi_restart(settings, objective.as_function(), objective.bounds(),
                               problem.restarts, by_response, problem.threads);
    report.all_runs = std::move(batch.runs);
    report.candidates = std::move(candidates);
    report.selected_run = batch.selected;

    if (report.selected_run) {
        const auto it = std::find_if(
            report.candidates.begin(), report.candidates.end(),
            [&](const CandidateEvaluation& c) { return c.run_index == *report.selected_run; });
        report.selected = it->params;
        report.residual = it->residual;
        report.metrics = it->metrics;
        report.spec_met = it->spec_met;
    } else {
        std::ostringstream msg;
        if (report.candidates.empty()) {
            double best_f = std::numeric_limits<double>::infinity();
            for (const auto& run : report.all_runs) best_f = std::min(best_f, run.best_fitness);
            msg << "no run converged below tolerance " << report.tolerance
                << " (best residual " << best_f << ")";
        } else {
            msg << "all " << report.candidates.size()
                << " converged candidates were disqualified in simulation";
        }
        report.diagnostic = msg.str();
    }
    return report;
}

ResidualBreakdown evaluate(const FractionalTransferFunction& plant,
                           const ControllerParams& params, Complex pole) {
    params.validate();
    return residual(plant, pole, params);
}

SimulationOutcome simulate(const FractionalTransferFunction& plant,
                           const std::optional<ControllerParams>& params,
                           const SimulationConfig& config) {
    const auto tf = params ? closed_loop(plant, controller_tf(*params)) : plant;
    SimulationOutcome out{simulate_step(tf, config), std::nullopt, {}};
    try {
        out.metrics = measure_metrics(out.response);
    } catch (const MetricError& e) {
        out.diagnostic = e.what();
    }
    return out;
}

int exit_code(const DesignReport& report) noexcept {
    if (!report.selected) return kExitNoConvergence;
    return report.spec_met ? kExitSpecMet : kExitSpecNotMet;
}

} // namespace fopid
