#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fopid/objective.hpp"
#include "fopid/optimizers.hpp"
#include "fopid/pole_placement.hpp"
#include "fopid/simulator.hpp"
#include "fopid/transfer_function.hpp"

namespace fopid {

/// Simulation fields a problem may override; unset fields use the defaults
/// derived from the damping spec.
struct SimulationOverrides {
    std::optional<double> step_h;
    std::optional<double> horizon;
    std::size_t memory_length = 0;
};

struct DesignProblem {
    FractionalTransferFunction plant;
    DesignSpec spec{};
    ControllerMode mode = ControllerMode::fractional;
    Algorithm algorithm = Algorithm::de;
    std::size_t restarts = 10;
    /// Optimizer settings; their seed fields are replaced by `seed`.
    PSOConfig pso{};
    DEConfig de{};
    ResidualWeights weights{};
    SimulationOverrides simulation{};
    std::uint64_t seed = 0;
    /// Worker threads for restarts (0 = hardware concurrency). Does not affect results.
    std::size_t threads = 1;

    /// Throws SpecError / ConfigError for invalid sub-configurations.
    void validate() const;
};

/// Time-domain check of one converged run.
struct CandidateEvaluation {
    std::size_t run_index = 0;
    ControllerParams params;
    ResidualBreakdown residual;
    std::optional<ResponseMetrics> metrics;
    bool spec_met = false;
    /// Why the candidate was disqualified; empty when it was simulated.
    std::string diagnostic;
};

struct DesignReport {
    DesignSpec spec;
    ControllerMode mode = ControllerMode::fractional;
    Algorithm algorithm = Algorithm::de;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    SimulationConfig simulation;
    DampingSpec damping;
    DominantPoles poles;
    std::vector<RunResult> all_runs;
    std::vector<CandidateEvaluation> candidates;

    std::optional<std::size_t> selected_run;
    std::optional<ControllerParams> selected;
    std::optional<ResidualBreakdown> residual;
    std::optional<ResponseMetrics> metrics;
    bool spec_met = false;
    std::string diagnostic;
};

/// Overshoot <= spec.mp and a rise time that exists and is <= spec.t_rise.
bool meets_spec(const ResponseMetrics& metrics, const DesignSpec& spec) noexcept;

/// Simulation settings used by design() for this spec and overrides.
SimulationConfig resolve_simulation(const SimulationOverrides& overrides,
                                    const DampingSpec& damping);

/**
 * @brief End-to-end controller synthesis.
 *
 * Spec -> damping -> dominant poles -> residual objective -> multi-restart
 * optimization. Every converged run's closed loop is simulated and the
 * winner minimizes (spec not met, overshoot, rise time) lexicographically.
 * Runs whose simulation fails or whose steady state is unusable are
 * disqualified with a diagnostic. When nothing converges the report has no
 * selection.
 */
DesignReport design(const DesignProblem& problem);

/// Residual breakdown of a given controller at a pole.
ResidualBreakdown evaluate(const FractionalTransferFunction& plant,
                           const ControllerParams& params, Complex pole);

struct SimulationOutcome {
    StepResponse response;
    std::optional<ResponseMetrics> metrics;
    std::string diagnostic;
};

/// Closed-loop step response of plant + controller, or the open-loop plant
/// when `params` is empty. Metrics are omitted (with a diagnostic) when the
/// steady state is unbounded or non-positive.
SimulationOutcome simulate(const FractionalTransferFunction& plant,
                           const std::optional<ControllerParams>& params,
                           const SimulationConfig& config);

/// Process exit status: 0 spec met, 1 spec not met, 2 no converged selection.
int exit_code(const DesignReport& report) noexcept;

inline constexpr int kExitSpecMet = 0;
inline constexpr int kExitSpecNotMet = 1;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitInputError = 3;

} // namespace fopid
