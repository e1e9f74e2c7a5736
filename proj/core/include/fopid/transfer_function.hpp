#pragma once

#include <span>
#include <vector>

#include "fopid/complex_fractional.hpp"

namespace fopid {

/// One c * s^alpha term of a fractional polynomial.
struct Term {
    double coefficient = 0.0;
    double exponent = 0.0;

    friend bool operator==(const Term&, const Term&) = default;
};

/**
 * @brief Sum of c_k * s^{alpha_k} terms with real (possibly non-integer) exponents.
 *
 * Always held in canonical form: ascending exponents, exponents closer than
 * kExponentMergeTolerance merged by adding coefficients, and coefficients
 * below kCoefficientPruneRatio * max|c| dropped. An empty term list is the
 * zero polynomial.
 */
class FractionalPolynomial {
public:
    static constexpr double kExponentMergeTolerance = 1e-12;
    static constexpr double kCoefficientPruneRatio = 1e-15;
    static constexpr double kMaxAbsExponent = 10.0;

    FractionalPolynomial() = default;

    /// Normalizes `terms`. Throws DomainError for non-finite values or
    /// exponents outside [-10, 10].
    explicit FractionalPolynomial(std::vector<Term> terms);

    static FractionalPolynomial constant(double c);
    static FractionalPolynomial monomial(double c, double exponent);

    std::span<const Term> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Smallest exponent. Undefined for the zero polynomial.
    double min_exponent() const noexcept { return terms_.front().exponent; }
    double max_exponent() const noexcept { return terms_.back().exponent; }

    /// Coefficient of the term with the smallest exponent (0 for the zero polynomial).
    double leading_low_coefficient() const noexcept {
        return terms_.empty() ? 0.0 : terms_.front().coefficient;
    }

    /// Multiplies every term by s^shift.
    FractionalPolynomial shifted(double shift) const;
    FractionalPolynomial scaled(double factor) const;

    friend FractionalPolynomial operator+(const FractionalPolynomial& a,
                                          const FractionalPolynomial& b);
    /// Term convolution: exponents add, coefficients multiply, then merge.
    friend FractionalPolynomial operator*(const FractionalPolynomial& a,
                                          const FractionalPolynomial& b);
    friend bool operator==(const FractionalPolynomial&,
                           const FractionalPolynomial&) = default;

private:
    std::vector<Term> terms_;
};

/// Canonical form of an arbitrary term list. Idempotent.
std::vector<Term> normalize_terms(std::vector<Term> terms);

/// Sum of c_k * cpow(s, alpha_k). Propagates cpow's DomainError at s = 0.
Complex poly_eval(const FractionalPolynomial& p, Complex s);

/// N(s) / D(s). The denominator always has a nonzero term.
class FractionalTransferFunction {
public:
    /// Throws CompositionError if `denominator` is the zero polynomial.
    FractionalTransferFunction(FractionalPolynomial numerator,
                               FractionalPolynomial denominator);

    const FractionalPolynomial& numerator() const noexcept { return num_; }
    const FractionalPolynomial& denominator() const noexcept { return den_; }

    Complex evaluate(Complex s) const;

    /// k * T(s).
    FractionalTransferFunction scaled(double k) const;

    /// Divides numerator and denominator by the largest common power of s.
    FractionalTransferFunction simplified() const;

    friend bool operator==(const FractionalTransferFunction&,
                           const FractionalTransferFunction&) = default;

private:
    FractionalPolynomial num_;
    FractionalPolynomial den_;
};

/// PI^lambda D^delta controller Kp + Ti s^{-lambda} + Td s^{delta}.
/// lambda = delta = 1 is the classical PID.
struct ControllerParams {
    double kp = 0.0;
    double ti = 0.0;
    double td = 0.0;
    double lambda = 1.0;
    double delta = 1.0;

    static constexpr double kGainUpper = 1000.0;
    static constexpr double kOrderUpper = 2.0;

    /// Throws ConfigError unless 0 <= kp, ti, td <= 1000 and 0 <= lambda, delta <= 2.
    void validate() const;

    friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

/// (Kp s^lambda + Ti + Td s^{lambda+delta}) / s^lambda, simplified.
FractionalTransferFunction controller_tf(const ControllerParams& params);

/// Unity-feedback loop Nc Np / (Dc Dp + Nc Np). Throws CompositionError if the
/// resulting denominator cancels to zero.
FractionalTransferFunction closed_loop(const FractionalTransferFunction& plant,
                                       const FractionalTransferFunction& controller);

/// Q(s) + (Kp + Ti s^{-lambda} + Td s^{delta}) P(s) from precomputed plant values.
/// Shared by char_eval and the optimizer objective so both follow one arithmetic path.
Complex characteristic_value(Complex plant_den_value, Complex plant_num_value,
                             const ControllerParams& params, Complex s);

/// Left side of the characteristic equation Q(s) + Gc(s) P(s) for plant P/Q.
/// Zero means s is a closed-loop pole. Throws DomainError at s = 0.
Complex char_eval(const FractionalTransferFunction& plant,
                  const ControllerParams& params, Complex s);

} // namespace fopid
