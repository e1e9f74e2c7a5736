#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fopid/design.hpp"

namespace fopid::testing {

/// G_p(s) = 1 / (0.8 s^2.2 + 0.5 s^0.9 + 1)
inline FractionalTransferFunction example_plant() {
    return {FractionalPolynomial::constant(1.0),
            FractionalPolynomial({{0.8, 2.2}, {0.5, 0.9}, {1.0, 0.0}})};
}

/// Mp <= 10 %, t_rise <= 0.3 s designed at the limit.
inline DesignSpec example_spec() { return {0.10, 0.3}; }

inline Complex example_pole() {
    return dominant_poles(damping_from_spec(example_spec())).p1;
}

/// The pole as printed with three decimals.
inline Complex printed_pole() { return {-5.384, 7.345}; }

inline const ControllerParams kFractionalPso{419.57, 638.72, 49.83, 0.25, 1.26};
inline const ControllerParams kFractionalDe{962.80, 197.55, 46.27, 1.79, 1.37};
inline const ControllerParams kIntegerPso{60.86, 14.03, 13.63, 1.0, 1.0};
inline const ControllerParams kIntegerDe{59.20, 1.23, 13.48, 1.0, 1.0};

/// Relative closeness with an absolute floor for values near zero.
inline bool close_rel(double a, double b, double rel, double floor = 1e-300) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), floor});
}

inline bool close_rel(Complex a, Complex b, double rel, double floor = 1e-300) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), floor});
}

/// Small deterministic generator for property checks.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    /// Nonzero complex number off the negative real axis.
    Complex complex_off_cut(double max_modulus = 5.0) {
        const double r = uniform(0.1, max_modulus);
        const double theta = uniform(-3.1, 3.1);
        return std::polar(r, theta);
    }

    ControllerParams params() {
        return {uniform(0, 1000), uniform(0, 1000), uniform(0, 1000), uniform(0, 2),
                uniform(0, 2)};
    }

    FractionalPolynomial polynomial(int max_terms = 4) {
        std::vector<Term> terms;
        const int count = integer(1, max_terms);
        for (int k = 0; k < count; ++k) {
            terms.push_back({uniform(-3, 3), uniform(0, 3)});
        }
        return FractionalPolynomial(std::move(terms));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fopid::testing
