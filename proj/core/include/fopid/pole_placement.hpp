#pragma once

#include <string_view>

#include "fopid/complex_fractional.hpp"

namespace fopid {

/// Peak overshoot (fraction in (0, 1)) and 0-100% rise time in seconds.
/// Inequality specs are designed at the limiting equality.
struct DesignSpec {
    double mp = 0.1;
    double t_rise = 0.3;

    /// Throws SpecError unless 0 < mp < 1 and t_rise > 0.
    void validate() const;
};

struct DampingSpec {
    double zeta = 0.0;
    double omega_n = 0.0;
};

/// Desired closed-loop pole pair p1,2 = -a +/- jb.
struct DominantPoles {
    Complex p1;
    Complex p2;
    double a = 0.0;
    double b = 0.0;
};

/// zeta = -ln(Mp) / sqrt(ln(Mp)^2 + pi^2). Throws SpecError unless 0 < mp < 1.
double zeta_from_overshoot(double mp);

/// omega_n = (pi - atan(sqrt(1 - zeta^2) / zeta)) / (t_rise sqrt(1 - zeta^2)).
/// Throws SpecError unless 0 < zeta < 1 and t_rise > 0.
double omega_from_rise(double zeta, double t_rise);

DampingSpec damping_from_spec(const DesignSpec& spec);

/// Throws SpecError unless 0 < zeta < 1 and omega_n > 0.
DominantPoles dominant_poles(const DampingSpec& d);

/// Second-order overshoot exp(-zeta pi / sqrt(1 - zeta^2)); inverse of zeta_from_overshoot.
double overshoot_from_zeta(double zeta);

/**
 * @brief Parses an overshoot value as written on the command line or in a
 * problem file.
 *
 * A bare number is a fraction ("0.1"); a trailing '%' marks percent ("10%").
 * Throws InputError on malformed text and SpecError when the resulting
 * fraction is outside (0, 1).
 */
double parse_overshoot(std::string_view text);

} // namespace fopid
