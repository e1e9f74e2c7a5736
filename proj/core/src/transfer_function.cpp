#include "fopid/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fopid/errors.hpp"

namespace fopid {

std::vector<Term> normalize_terms(std::vector<Term> terms) {
    for (const auto& t : terms) {
        if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent)) {
            throw DomainError("fractional polynomial: non-finite term");
        }
        if (std::abs(t.exponent) > FractionalPolynomial::kMaxAbsExponent) {
            throw DomainError("fractional polynomial: exponent " +
                              std::to_string(t.exponent) + " outside [-10, 10]");
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return a.exponent < b.exponent;
    });

    // Each group is keyed by its smallest exponent, so group representatives
    // end up at least the merge tolerance apart and a second pass is a no-op.
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!merged.empty() &&
            t.exponent - merged.back().exponent <
                FractionalPolynomial::kExponentMergeTolerance) {
            merged.back().coefficient += t.coefficient;
        } else {
            merged.push_back(t);
        }
    }

    double largest = 0.0;
    for (const auto& t : merged) {
        largest = std::max(largest, std::abs(t.coefficient));
    }
    const double cutoff = FractionalPolynomial::kCoefficientPruneRatio * largest;
    std::erase_if(merged, [cutoff](const Term& t) {
        return t.coefficient == 0.0 || std::abs(t.coefficient) < cutoff;
    });
    return merged;
}

FractionalPolynomial::FractionalPolynomial(std::vector<Term> terms)
    : terms_(normalize_terms(std::move(terms))) {}

FractionalPolynomial FractionalPolynomial::constant(double c) {
    return FractionalPolynomial({{c, 0.0}});
}

FractionalPolynomial FractionalPolynomial::monomial(double c, double exponent) {
    return FractionalPolynomial({{c, exponent}});
}

FractionalPolynomial FractionalPolynomial::shifted(double shift) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (auto& t : out) {
        t.exponent += shift;
    }
    return FractionalPolynomial(std::move(out));
}

FractionalPolynomial FractionalPolynomial::scaled(double factor) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (auto& t : out) {
        t.coefficient *= factor;
    }
    return FractionalPolynomial(std::move(out));
}

FractionalPolynomial operator+(const FractionalPolynomial& a,
                               const FractionalPolynomial& b) {
    std::vector<Term> out(a.terms_.begin(), a.terms_.end());
    out.insert(out.end(), b.terms_.begin(), b.terms_.end());
    return FractionalPolynomial(std::move(out));
}

FractionalPolynomial operator*(const FractionalPolynomial& a,
                               const FractionalPolynomial& b) {
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            out.push_back({x.coefficient * y.coefficient, x.exponent + y.exponent});
        }
    }
    return FractionalPolynomial(std::move(out));
}

Complex poly_eval(const FractionalPolynomial& p, Complex s) {
    Complex sum{0.0, 0.0};
    for (const auto& t : p.terms()) {
        sum += t.coefficient * cpow(s, t.exponent);
    }
    return sum;
}

FractionalTransferFunction::FractionalTransferFunction(FractionalPolynomial numerator,
                                                       FractionalPolynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) {
        throw CompositionError("transfer function: denominator is identically zero");
    }
}

Complex FractionalTransferFunction::evaluate(Complex s) const {
    return poly_eval(num_, s) / poly_eval(den_, s);
}

FractionalTransferFunction FractionalTransferFunction::scaled(double k) const {
    return {num_.scaled(k), den_};
}

FractionalTransferFunction FractionalTransferFunction::simplified() const {
    const double common =
        num_.is_zero() ? den_.min_exponent()
                       : std::min(num_.min_exponent(), den_.min_exponent());
    if (common == 0.0) {
        return *this;
    }
    return {num_.shifted(-common), den_.shifted(-common)};
}

void ControllerParams::validate() const {
    auto check = [](double v, double upper, const char* name) {
        if (!(v >= 0.0 && v <= upper)) {
            throw ConfigError(std::string("controller parameter ") + name + " = " +
                              std::to_string(v) + " outside [0, " +
                              std::to_string(upper) + "]");
        }
    };
    check(kp, kGainUpper, "Kp");
    check(ti, kGainUpper, "Ti");
    check(td, kGainUpper, "Td");
    check(lambda, kOrderUpper, "lambda");
    check(delta, kOrderUpper, "delta");
}

FractionalTransferFunction controller_tf(const ControllerParams& params) {
    params.validate();
    FractionalPolynomial numerator({{params.kp, params.lambda},
                                    {params.ti, 0.0},
                                    {params.td, params.lambda + params.delta}});
    auto denominator = FractionalPolynomial::monomial(1.0, params.lambda);
    return FractionalTransferFunction(std::move(numerator), std::move(denominator))
        .simplified();
}

FractionalTransferFunction closed_loop(const FractionalTransferFunction& plant,
                                       const FractionalTransferFunction& controller) {
    auto forward = controller.numerator() * plant.numerator();
    auto open = controller.denominator() * plant.denominator();
    auto denominator = open + forward;
    if (denominator.is_zero()) {
        throw CompositionError("closed loop: 1 + G(s) cancels to zero");
    }
    return {std::move(forward), std::move(denominator)};
}

Complex characteristic_value(Complex plant_den_value, Complex plant_num_value,
                             const ControllerParams& params, Complex s) {
    const Complex controller = params.kp + params.ti * cpow(s, -params.lambda) +
                               params.td * cpow(s, params.delta);
    return plant_den_value + controller * plant_num_value;
}

Complex char_eval(const FractionalTransferFunction& plant,
                  const ControllerParams& params, Complex s) {
    if (s == Complex{0.0, 0.0}) {
        throw DomainError("char_eval: s must be nonzero");
    }
    return characteristic_value(poly_eval(plant.denominator(), s),
                                poly_eval(plant.numerator(), s), params, s);
}

} // namespace fopid
