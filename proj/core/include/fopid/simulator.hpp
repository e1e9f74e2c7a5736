#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "fopid/pole_placement.hpp"
#include "fopid/transfer_function.hpp"

namespace fopid {

struct SimulationConfig {
    double step_h = 1e-3;   ///< seconds
    double horizon = 2.0;   ///< seconds
    /// GL short-memory length in samples; 0 keeps the full history.
    std::size_t memory_length = 0;

    static constexpr double kMaxSamples = 1e7;

    /// Throws ConfigError for non-positive step/horizon or more than 1e7 samples.
    void validate() const;
};

/// max(2 s, 8 / (zeta omega_n)): about four time constants of the dominant envelope.
double default_horizon(const DampingSpec& damping);

/// Final value of T(s) as s -> 0 for a unit step input.
struct SteadyState {
    enum class Kind { finite, unbounded };
    Kind kind = Kind::finite;
    double value = 0.0;

    bool is_finite() const noexcept { return kind == Kind::finite; }
};

SteadyState steady_state(const FractionalTransferFunction& tf);

struct StepResponse {
    std::vector<double> times;
    std::vector<double> values;
    /// Absent when the final value is unbounded.
    std::optional<double> steady_state;
};

/// Uniform-grid response assembled from externally produced samples.
StepResponse make_step_response(std::vector<double> values, double step_h,
                                std::optional<double> steady);

/**
 * @brief Unit-step response of a fractional transfer function.
 *
 * Discretizes A(s) Y = B(s) U with every s^alpha replaced by the
 * Grünwald–Letnikov sum h^-alpha sum_m w_m^(alpha) x_{k-m}, zero initial
 * conditions and u_k = 1 for k >= 0, then solves for y_k sample by sample.
 * Negative exponents are cleared by multiplying through by a power of s.
 * Throws SimulationError when the GL normalizer vanishes or an output is
 * not finite.
 */
StepResponse simulate_step(const FractionalTransferFunction& tf,
                           const SimulationConfig& config);

struct ResponseMetrics {
    double overshoot_fraction = 0.0;
    double peak_value = 0.0;
    double peak_time = 0.0;
    /// First crossing of the steady-state value (linear interpolation).
    std::optional<double> rise_time;
    /// 10-90% rise time, reported only when the response never reaches steady state.
    std::optional<double> rise_time_10_90;
    /// Last sample within 2% of the steady-state value.
    bool settled = false;
};

/// Throws MetricError when the steady state is absent or non-positive.
ResponseMetrics measure_metrics(const StepResponse& response);

/// CSV with header `time,output`.
void write_response_csv(std::ostream& out, const StepResponse& response);

} // namespace fopid
