#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fopid/errors.hpp"
#include "fopid/objective.hpp"
#include "support/fixtures.hpp"

using namespace fopid;
using namespace fopid::testing;

namespace {

std::vector<double> as_vector(const ControllerParams& p) {
    return {p.kp, p.ti, p.td, p.lambda, p.delta};
}

} // namespace

TEST_SUITE("objective") {

TEST_CASE("all-zero controller leaves only the plant denominator") {
    const Objective f(example_plant(), printed_pole(), ControllerMode::fractional);
    const std::array<double, 5> zero{};
    // Q(p1) = 13.4235 - 98.9237j, so |R| + |I| = 112.347 and atan(I / R) = -1.43592.
    const auto b = f.breakdown(zero);
    CHECK(std::abs(b.r - 13.4235) <= 0.01);
    CHECK(std::abs(b.i + 98.9237) <= 0.01);
    CHECK(std::abs(b.p - std::atan(-98.9237 / 13.4235)) <= 1e-4);
    CHECK(std::abs(f(zero) - 113.78) <= 0.3);
}

TEST_CASE("exact root gives zero") {
    // 1 / (s + 1) with Kp = 1 closes to s + 2, which vanishes at -2.
    const FractionalTransferFunction plant{FractionalPolynomial::constant(1.0),
                                           FractionalPolynomial({{1.0, 1.0}, {1.0, 0.0}})};
    const auto b = residual(plant, {-2.0, 0.0}, {1.0, 0.0, 0.0, 1.0, 1.0});
    CHECK(std::abs(b.f) <= 1e-12);
}

TEST_CASE("weights select terms") {
    const Objective f(example_plant(), printed_pole(), ControllerMode::fractional,
                      {1.0, 1.0, 0.0});
    const std::array<double, 5> zero{};
    CHECK(std::abs(f(zero) - 112.347) <= 0.3);
}

TEST_CASE("angle guard at r = 0") {
    CHECK(angle_term(0.0, 2.0) == doctest::Approx(std::numbers::pi / 2));
    CHECK(angle_term(0.0, -2.0) == doctest::Approx(-std::numbers::pi / 2));
    CHECK(angle_term(0.0, 0.0) == 0.0);
    CHECK(angle_term(-1.0, 1.0) == doctest::Approx(-std::numbers::pi / 4));
}

TEST_CASE("dimensions and bounds follow the mode") {
    const Objective frac(example_plant(), example_pole(), ControllerMode::fractional);
    const Objective integer(example_plant(), example_pole(), ControllerMode::integer);
    CHECK(frac.dimension() == 5);
    CHECK(integer.dimension() == 3);
    CHECK(frac.bounds().upper == std::vector<double>{1000, 1000, 1000, 2, 2});
    CHECK(integer.bounds().lower == std::vector<double>{0, 0, 0});

    const std::array<double, 3> x{60.86, 14.03, 13.63};
    const auto p = integer.to_params(x);
    CHECK(p.lambda == 1.0);
    CHECK(p.delta == 1.0);
    CHECK(integer(x) == residual(example_plant(), example_pole(), kIntegerPso).f);

    CHECK_THROWS_AS(frac.to_params(x), ConfigError);
}

TEST_CASE("mode names") {
    CHECK(parse_controller_mode("integer") == ControllerMode::integer);
    CHECK(to_string(ControllerMode::fractional) == "fractional");
    CHECK_THROWS_AS(parse_controller_mode("FOPID"), InputError);
}

TEST_CASE("zero pole is a domain error") {
    CHECK_THROWS_AS(residual(example_plant(), {0.0, 0.0}, kIntegerPso), DomainError);
}

TEST_CASE("property: conjugate pole gives the same objective") {
    Sampler gen(31);
    const Objective upper(example_plant(), example_pole(), ControllerMode::fractional);
    const Objective lower(example_plant(), std::conj(example_pole()), ControllerMode::fractional);
    for (int k = 0; k < 200; ++k) {
        const auto x = as_vector(gen.params());
        CHECK(close_rel(upper(x), lower(x), 1e-12, 1.0));
    }
}

TEST_CASE("property: default-weight objective equals the residual") {
    Sampler gen(32);
    const Objective f(example_plant(), example_pole(), ControllerMode::fractional);
    for (int k = 0; k < 100; ++k) {
        const auto params = gen.params();
        const auto x = as_vector(params);
        const auto direct = residual(example_plant(), example_pole(), params);
        CHECK(f(x) == direct.f);
        CHECK(direct.f == std::abs(direct.r) + std::abs(direct.i) + std::abs(direct.p));
    }
}

TEST_CASE("property: angle term bounded and modulus bound holds") {
    Sampler gen(33);
    for (int k = 0; k < 200; ++k) {
        const auto params = gen.params();
        const auto b = residual(example_plant(), example_pole(), params);
        CHECK(std::abs(b.p) <= std::numbers::pi / 2);
        const auto z = char_eval(example_plant(), params, example_pole());
        CHECK(std::abs(z) <= kResidualModulusBound * b.f * (1 + 1e-12));
    }
}

}
