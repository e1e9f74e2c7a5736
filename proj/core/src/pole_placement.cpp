#include "fopid/pole_placement.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "fopid/errors.hpp"

namespace fopid {

using std::numbers::pi;

void DesignSpec::validate() const {
    if (!(mp > 0.0 && mp < 1.0)) {
        throw SpecError("peak overshoot must be a fraction in (0, 1), got " +
                        std::to_string(mp));
    }
    if (!(t_rise > 0.0) || !std::isfinite(t_rise)) {
        throw SpecError("rise time must be positive, got " + std::to_string(t_rise));
    }
}

double zeta_from_overshoot(double mp) {
    if (!(mp > 0.0 && mp < 1.0)) {
        throw SpecError("peak overshoot must be a fraction in (0, 1), got " +
                        std::to_string(mp));
    }
    const double log_mp = std::log(mp);
    return -log_mp / std::sqrt(log_mp * log_mp + pi * pi);
}

double omega_from_rise(double zeta, double t_rise) {
    if (!(zeta > 0.0 && zeta < 1.0)) {
        throw SpecError("damping ratio must lie in (0, 1), got " + std::to_string(zeta));
    }
    if (!(t_rise > 0.0) || !std::isfinite(t_rise)) {
        throw SpecError("rise time must be positive, got " + std::to_string(t_rise));
    }
    const double root = std::sqrt(1.0 - zeta * zeta);
    return (pi - std::atan(root / zeta)) / (t_rise * root);
}

DampingSpec damping_from_spec(const DesignSpec& spec) {
    spec.validate();
    const double zeta = zeta_from_overshoot(spec.mp);
    return {zeta, omega_from_rise(zeta, spec.t_rise)};
}

DominantPoles dominant_poles(const DampingSpec& d) {
    if (!(d.zeta > 0.0 && d.zeta < 1.0)) {
        throw SpecError("damping ratio must lie in (0, 1), got " + std::to_string(d.zeta));
    }
    if (!(d.omega_n > 0.0) || !std::isfinite(d.omega_n)) {
        throw SpecError("natural frequency must be positive, got " +
                        std::to_string(d.omega_n));
    }
    const double a = d.zeta * d.omega_n;
    const double b = d.omega_n * std::sqrt(1.0 - d.zeta * d.zeta);
    return {Complex{-a, b}, Complex{-a, -b}, a, b};
}

double overshoot_from_zeta(double zeta) {
    if (!(zeta > 0.0 && zeta < 1.0)) {
        throw SpecError("damping ratio must lie in (0, 1), got " + std::to_string(zeta));
    }
    return std::exp(-zeta * pi / std::sqrt(1.0 - zeta * zeta));
}

double parse_overshoot(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

    bool percent = false;
    if (!text.empty() && text.back() == '%') {
        percent = true;
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw InputError("cannot parse overshoot '" + std::string(text) + "'");
    }
    const double fraction = percent ? value / 100.0 : value;
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw SpecError("peak overshoot must be in (0, 1) or (0%, 100%), got '" +
                        std::string(text) + (percent ? "%'" : "'"));
    }
    return fraction;
}

} // namespace fopid
