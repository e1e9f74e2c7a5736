#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fopid {

using Complex = std::complex<double>;

/// Principal argument in (-pi, pi]. A negative-zero imaginary part on the
/// negative real axis maps to +pi, not -pi.
double principal_arg(Complex z) noexcept;

/**
 * @brief Principal-branch real power of a complex number.
 *
 * Computes |base|^exponent * exp(j * exponent * Arg(base)) with
 * Arg in (-pi, pi]. Integer exponents up to 64 in magnitude use exact
 * repeated multiplication instead. A zero base yields 1 for exponent 0, 0 for a positive
 * exponent and throws DomainError for a negative one. Non-finite results
 * (overflow) also throw DomainError.
 */
Complex cpow(Complex base, double exponent);

/// Grünwald–Letnikov binomial weights w_j = (-1)^j C(order, j).
struct GLWeights {
    double order = 0.0;
    std::vector<double> weights;
};

/// First `count` GL weights via w_0 = 1, w_j = w_{j-1} (1 - (order + 1) / j).
/// Throws DomainError when count is zero or order is not finite.
GLWeights gl_weights(double order, std::size_t count);

} // namespace fopid
