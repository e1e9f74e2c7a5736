#include "fopid/objective.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fopid/errors.hpp"

namespace fopid {

double angle_term(double r, double i) noexcept {
    if (r == 0.0) {
        if (i == 0.0) return 0.0;
        return std::copysign(std::numbers::pi / 2.0, i);
    }
    return std::atan(i / r);
}

namespace {

ResidualBreakdown split(Complex z) noexcept {
    ResidualBreakdown out;
    out.r = z.real();
    out.i = z.imag();
    out.p = angle_term(out.r, out.i);
    out.f = std::abs(out.r) + std::abs(out.i) + std::abs(out.p);
    return out;
}

Bounds search_bounds(ControllerMode mode) {
    constexpr double g = ControllerParams::kGainUpper;
    constexpr double o = ControllerParams::kOrderUpper;
    if (mode == ControllerMode::integer) {
        return {{0.0, 0.0, 0.0}, {g, g, g}};
    }
    return {{0.0, 0.0, 0.0, 0.0, 0.0}, {g, g, g, o, o}};
}

} // namespace

ResidualBreakdown residual(const FractionalTransferFunction& plant, Complex pole,
                           const ControllerParams& params) {
    return split(char_eval(plant, params, pole));
}

std::string_view to_string(ControllerMode mode) noexcept {
    return mode == ControllerMode::integer ? "integer" : "fractional";
}

ControllerMode parse_controller_mode(std::string_view text) {
    if (text == "fractional") return ControllerMode::fractional;
    if (text == "integer") return ControllerMode::integer;
    throw InputError("unknown controller mode '" + std::string(text) +
                     "' (expected fractional or integer)");
}

Objective::Objective(const FractionalTransferFunction& plant, Complex pole,
                     ControllerMode mode, ResidualWeights weights)
    : pole_(pole), mode_(mode), weights_(weights), bounds_(search_bounds(mode)) {
    if (pole == Complex{0.0, 0.0}) {
        throw DomainError("objective: pole must be nonzero");
    }
    plant_num_value_ = poly_eval(plant.numerator(), pole);
    plant_den_value_ = poly_eval(plant.denominator(), pole);
}

std::size_t Objective::dimension() const noexcept { return bounds_.size(); }

ControllerParams Objective::to_params(std::span<const double> x) const {
    if (x.size() != dimension()) {
        throw ConfigError("objective: expected " + std::to_string(dimension()) +
                          " parameters, got " + std::to_string(x.size()));
    }
    ControllerParams p{x[0], x[1], x[2], 1.0, 1.0};
    if (mode_ == ControllerMode::fractional) {
        p.lambda = x[3];
        p.delta = x[4];
    }
    return p;
}

ResidualBreakdown Objective::breakdown(std::span<const double> x) const {
    return split(characteristic_value(plant_den_value_, plant_num_value_,
                                      to_params(x), pole_));
}

double Objective::operator()(std::span<const double> x) const {
    const auto b = breakdown(x);
    return weights_.real * std::abs(b.r) + weights_.imag * std::abs(b.i) +
           weights_.angle * std::abs(b.p);
}

ObjectiveFn Objective::as_function() const {
    return [self = *this](std::span<const double> x) { return self(x); };
}

Objective make_objective(const FractionalTransferFunction& plant, Complex pole,
                         ControllerMode mode, ResidualWeights weights) {
    return {plant, pole, mode, weights};
}

} // namespace fopid
