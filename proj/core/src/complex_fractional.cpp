#include "fopid/complex_fractional.hpp"

#include <cmath>
#include <numbers>

#include "fopid/errors.hpp"

namespace fopid {

double principal_arg(Complex z) noexcept {
    const double angle = std::arg(z);
    // atan2(-0.0, x < 0) returns -pi; the principal range is (-pi, pi].
    return angle == -std::numbers::pi ? std::numbers::pi : angle;
}

namespace {

constexpr double kExactPowerLimit = 64.0;

/// Binary exponentiation: real bases stay real and s^1 stays s exactly.
Complex integer_power(Complex base, int n) {
    if (n < 0) return Complex{1.0, 0.0} / integer_power(base, -n);
    Complex result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

} // namespace

Complex cpow(Complex base, double exponent) {
    if (!std::isfinite(base.real()) || !std::isfinite(base.imag()) ||
        !std::isfinite(exponent)) {
        throw DomainError("cpow: non-finite argument");
    }
    if (base == Complex{0.0, 0.0}) {
        if (exponent < 0.0) {
            throw DomainError("cpow: zero base with negative exponent");
        }
        return exponent == 0.0 ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    }
    Complex result;
    if (std::abs(exponent) <= kExactPowerLimit && exponent == std::trunc(exponent)) {
        result = integer_power(base, static_cast<int>(exponent));
    } else {
        const double magnitude = std::pow(std::abs(base), exponent);
        const double angle = exponent * principal_arg(base);
        result = {magnitude * std::cos(angle), magnitude * std::sin(angle)};
    }
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
        throw DomainError("cpow: result overflows");
    }
    return result;
}

GLWeights gl_weights(double order, std::size_t count) {
    if (count == 0) {
        throw DomainError("gl_weights: count must be at least 1");
    }
    if (!std::isfinite(order)) {
        throw DomainError("gl_weights: order must be finite");
    }
    GLWeights out{order, std::vector<double>(count)};
    auto& w = out.weights;
    w[0] = 1.0;
    for (std::size_t j = 1; j < count; ++j) {
        w[j] = w[j - 1] * (1.0 - (order + 1.0) / static_cast<double>(j));
    }
    return out;
}

} // namespace fopid
