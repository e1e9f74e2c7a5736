#pragma once

#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "fopid/design.hpp"

namespace fopid {

/// {"num": [[c, a], ...], "den": [[c, a], ...]}
nlohmann::json to_json(const FractionalTransferFunction& tf);
/// Throws InputError on a malformed document.
FractionalTransferFunction transfer_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ControllerParams& params);
/// Missing lambda/delta default to 1 (classical PID).
ControllerParams controller_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ResidualBreakdown& r);
nlohmann::json to_json(const ResponseMetrics& m);
nlohmann::json to_json(const RunResult& run, bool include_trace = false);

/**
 * @brief Parses a design problem file.
 *
 * Required: "plant" (transfer-function object) and "spec" with "mp"
 * (fraction, or a string with a '%' suffix) and "t_rise" (seconds).
 * Optional: "mode", "algorithm", "restarts", "seed", "threads", "weights"
 * ([w_r, w_i, w_p]), "optimizer" (population, max_iters, tolerance, omega,
 * c1, c2, vmax, f_scale, cr, bound_handling) and "simulation" (step_h, horizon, memory_length).
 * Unknown keys are rejected. Throws InputError, SpecError or ConfigError.
 */
DesignProblem design_problem_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DesignReport& report);

/// Inverse of to_json(DesignReport) for the fields the table report needs.
DesignReport design_report_from_json(const nlohmann::json& j);

/// CSV with header `iteration,best_fitness`.
void write_trace_csv(std::ostream& out, std::span<const double> trace);

} // namespace fopid
