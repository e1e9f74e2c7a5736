// Acceptance checks for the worked example: one PASS/FAIL line per criterion.
// Exit status is the number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fopid/design.hpp"
#include "fopid/objective.hpp"
#include "fopid/simulator.hpp"
#include "support/fixtures.hpp"

using namespace fopid;
using namespace fopid::testing;

namespace {

constexpr std::uint64_t kSeed = 2024;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

Outcome pole_pipeline() {
    const auto damping = damping_from_spec(example_spec());
    const auto p1 = dominant_poles(damping).p1;
    const bool pass = std::abs(damping.zeta - 0.5912) <= 0.0005 &&
                      std::abs(damping.omega_n - 9.107) <= 0.005 &&
                      std::abs(p1.real() + 5.384) <= 0.005 && std::abs(p1.imag() - 7.345) <= 0.005;
    return {pass, fmt("zeta=%.5f omega_n=%.4f p1=%.4f%+.4fj", damping.zeta, damping.omega_n,
                      p1.real(), p1.imag())};
}

Outcome characteristic_constants() {
    const auto plant = example_plant();
    const auto& den = plant.denominator();
    const auto printed = poly_eval(den, printed_pole());
    const auto full = poly_eval(den, example_pole());
    const bool pass = std::abs(printed.real() - 13.4235) <= 0.15 &&
                      std::abs(printed.imag() + 98.9237) <= 0.15 &&
                      std::abs(printed - full) < 0.2;
    return {pass, fmt("Q(printed p1)=%.4f%+.4fj Q(full p1)=%.4f%+.4fj |diff|=%.4f",
                      printed.real(), printed.imag(), full.real(), full.imag(),
                      std::abs(printed - full))};
}

Outcome convergence() {
    const Objective objective(example_plant(), example_pole(), ControllerMode::fractional);
    std::string detail;
    bool pass = true;
    for (auto algorithm : {Algorithm::pso, Algorithm::de}) {
        OptimizerSettings settings;
        settings.algorithm = algorithm;
        settings.pso.seed = settings.de.seed = kSeed;
        const auto batch =
            multi_restart(settings, objective.as_function(), objective.bounds(), 10, {}, 0);
        std::vector<std::size_t> iterations;
        for (const auto& run : batch.runs) {
            if (run.converged) iterations.push_back(run.iterations_used);
        }
        std::sort(iterations.begin(), iterations.end());
        double median = NAN;
        if (!iterations.empty()) {
            const auto n = iterations.size();
            median = 0.5 * static_cast<double>(iterations[(n - 1) / 2] + iterations[n / 2]);
        }
        pass = pass && iterations.size() >= 8 && median <= 2500;
        detail += fmt("%s %zu/10 converged, median %.0f iterations; ",
                      std::string(to_string(algorithm)).c_str(), iterations.size(), median);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome published_residuals() {
    struct Row {
        const char* name;
        ControllerParams params;
    };
    const Row rows[] = {{"fractional/pso", kFractionalPso},
                        {"fractional/de", kFractionalDe},
                        {"integer/pso", kIntegerPso},
                        {"integer/de", kIntegerDe}};
    bool pass = true;
    std::string detail;
    for (const auto& row : rows) {
        const auto r = residual(example_plant(), example_pole(), row.params);
        const double size = std::abs(r.r) + std::abs(r.i);
        pass = pass && size <= 25.0;
        detail += fmt("%s |R|+|I|=%.3f; ", row.name, size);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome simulator_oracle() {
    std::mt19937_64 engine(kSeed);
    std::uniform_real_distribution<double> zeta_dist(0.3, 0.8);
    std::uniform_real_distribution<double> omega_dist(1.0, 10.0);
    double worst_mp = 0.0;
    double worst_tr = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double zeta = zeta_dist(engine);
        const double wn = omega_dist(engine);
        const double root = std::sqrt(1 - zeta * zeta);
        const double mp = std::exp(-zeta * std::numbers::pi / root);
        const double tr = (std::numbers::pi - std::acos(zeta)) / (wn * root);
        const FractionalTransferFunction tf{
            FractionalPolynomial::constant(wn * wn),
            FractionalPolynomial({{1.0, 2.0}, {2 * zeta * wn, 1.0}, {wn * wn, 0.0}})};
        const double horizon = default_horizon({zeta, wn});
        for (double h : {1e-3, 5e-4}) {
            const auto m = measure_metrics(simulate_step(tf, {h, horizon, 0}));
            worst_mp = std::max(worst_mp, std::abs(m.overshoot_fraction - mp) / mp);
            worst_tr = std::max(worst_tr, m.rise_time ? std::abs(*m.rise_time - tr) / tr : INFINITY);
        }
    }
    return {worst_mp <= 0.02 && worst_tr <= 0.02,
            fmt("10 loops at h=1e-3 and 5e-4: worst overshoot error %.3f%%, worst rise-time error %.3f%%",
                100 * worst_mp, 100 * worst_tr)};
}

Outcome published_metrics() {
    auto measure = [](const ControllerParams& params, double h) {
        const auto tf = closed_loop(example_plant(), controller_tf(params));
        return measure_metrics(simulate_step(tf, {h, 2.0, 0}));
    };
    const auto de = measure(kFractionalDe, 1e-3);
    const auto pso = measure(kFractionalPso, 1e-3);
    const auto de_fine = measure(kFractionalDe, 5e-4);
    const auto pso_fine = measure(kFractionalPso, 5e-4);
    const double de_tr = de.rise_time.value_or(INFINITY);
    const double pso_tr = pso.rise_time.value_or(INFINITY);
    const bool pass = de.overshoot_fraction >= 0.02 && de.overshoot_fraction <= 0.10 &&
                      de_tr <= 0.10 && pso.overshoot_fraction >= 0.04 &&
                      pso.overshoot_fraction <= 0.12 && pso_tr <= 0.08;
    return {pass, fmt("de Mp=%.2f%% tr=%.4fs (h/2: %.2f%%, %.4fs); pso Mp=%.2f%% tr=%.4fs "
                      "(h/2: %.2f%%, %.4fs)",
                      100 * de.overshoot_fraction, de_tr, 100 * de_fine.overshoot_fraction,
                      de_fine.rise_time.value_or(INFINITY), 100 * pso.overshoot_fraction, pso_tr,
                      100 * pso_fine.overshoot_fraction, pso_fine.rise_time.value_or(INFINITY))};
}

Outcome superiority() {
    bool pass = true;
    std::string detail;
    for (auto algorithm : {Algorithm::pso, Algorithm::de}) {
        double overshoot[2] = {NAN, NAN};
        for (auto mode : {ControllerMode::fractional, ControllerMode::integer}) {
            DesignProblem problem{.plant = example_plant()};
            problem.spec = example_spec();
            problem.mode = mode;
            problem.algorithm = algorithm;
            problem.restarts = 10;
            problem.seed = kSeed;
            problem.threads = 0;
            const auto report = design(problem);
            if (report.metrics) {
                overshoot[mode == ControllerMode::integer] = report.metrics->overshoot_fraction;
            }
        }
        pass = pass && overshoot[0] < overshoot[1];
        detail += fmt("%s fractional Mp=%.2f%% vs integer Mp=%.2f%%; ",
                      std::string(to_string(algorithm)).c_str(), 100 * overshoot[0],
                      100 * overshoot[1]);
    }
    detail.resize(detail.size() - 2);
    return {pass, detail};
}

Outcome property_suites() {
    const std::string command =
        std::string(FOPID_UNIT_TESTS) + " --test-case='property:*' --minimal >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    const bool pass = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    return {pass, pass ? "all property test cases passed" : "property test cases failed"};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"spec-to-pole pipeline", pole_pipeline},
        {"characteristic constants", characteristic_constants},
        {"optimization convergence", convergence},
        {"published-parameter residuals", published_residuals},
        {"simulator oracle", simulator_oracle},
        {"published response metrics", published_metrics},
        {"fractional beats integer overshoot", superiority},
        {"property suites", property_suites},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::printf("[%s] %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", ++index, name,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
