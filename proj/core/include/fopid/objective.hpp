#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "fopid/optimizers.hpp"
#include "fopid/transfer_function.hpp"

namespace fopid {

/// Characteristic-equation residual at the desired pole, f = |r| + |i| + |p|.
struct ResidualBreakdown {
    double r = 0.0;
    double i = 0.0;
    double p = 0.0; ///< atan(i / r), radians, |p| <= pi/2
    double f = 0.0;
};

/// Single-argument arctangent of i / r with the r = 0 guard:
/// sign(i) pi/2 when r = 0 and i != 0, and 0 when both vanish.
double angle_term(double r, double i) noexcept;

/// Evaluates Q(pole) + Gc(pole) P(pole) and splits it into the residual terms.
/// Throws DomainError when pole is zero.
ResidualBreakdown residual(const FractionalTransferFunction& plant, Complex pole,
                           const ControllerParams& params);

/// Since |z| <= |r| + |i| <= f, a residual below eps bounds |char_eval| by
/// kResidualModulusBound * eps.
inline constexpr double kResidualModulusBound = 1.0;

enum class ControllerMode { fractional, integer };

std::string_view to_string(ControllerMode mode) noexcept;
/// Throws InputError for anything other than "fractional" / "integer".
ControllerMode parse_controller_mode(std::string_view text);

struct ResidualWeights {
    double real = 1.0;
    double imag = 1.0;
    double angle = 1.0;
};

/**
 * @brief Weighted residual as a function of the optimizer's decision vector.
 *
 * Fractional mode searches {Kp, Ti, Td, lambda, delta} over
 * [0,1000]^3 x [0,2]^2; integer mode searches {Kp, Ti, Td} over [0,1000]^3
 * with lambda = delta = 1 injected. The plant is evaluated at the pole once
 * at construction, so the handle is cheap to call and safe to share between
 * threads.
 */
class Objective {
public:
    Objective(const FractionalTransferFunction& plant, Complex pole,
              ControllerMode mode, ResidualWeights weights = {});

    std::size_t dimension() const noexcept;
    const Bounds& bounds() const noexcept { return bounds_; }
    ControllerMode mode() const noexcept { return mode_; }
    Complex pole() const noexcept { return pole_; }
    const ResidualWeights& weights() const noexcept { return weights_; }

    /// Maps a decision vector to controller parameters. Throws ConfigError on
    /// a dimension mismatch.
    ControllerParams to_params(std::span<const double> x) const;

    ResidualBreakdown breakdown(std::span<const double> x) const;

    /// w_r |R| + w_i |I| + w_p |P|.
    double operator()(std::span<const double> x) const;

    /// Adapter for the optimizers' function handle.
    ObjectiveFn as_function() const;

private:
    Complex pole_;
    Complex plant_num_value_;
    Complex plant_den_value_;
    ControllerMode mode_;
    ResidualWeights weights_;
    Bounds bounds_;
};

Objective make_objective(const FractionalTransferFunction& plant, Complex pole,
                         ControllerMode mode, ResidualWeights weights = {});

} // namespace fopid
