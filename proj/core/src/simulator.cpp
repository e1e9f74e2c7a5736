#include "fopid/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "fopid/errors.hpp"

namespace fopid {

void SimulationConfig::validate() const {
    if (!(step_h > 0.0) || !std::isfinite(step_h)) {
        throw ConfigError("simulation: step_h must be positive");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ConfigError("simulation: horizon must be positive");
    }
    if (horizon / step_h > kMaxSamples) {
        throw ConfigError("simulation: horizon / step_h exceeds 1e7 samples");
    }
}

double default_horizon(const DampingSpec& damping) {
    return std::max(2.0, 8.0 / (damping.zeta * damping.omega_n));
}

SteadyState steady_state(const FractionalTransferFunction& tf) {
    const auto& num = tf.numerator();
    const auto& den = tf.denominator();
    if (num.is_zero()) return {SteadyState::Kind::finite, 0.0};
    const double n0 = num.min_exponent();
    const double d0 = den.min_exponent();
    const double tol = FractionalPolynomial::kExponentMergeTolerance;
    if (n0 < d0 - tol) return {SteadyState::Kind::unbounded, 0.0};
    if (n0 > d0 + tol) return {SteadyState::Kind::finite, 0.0};
    return {SteadyState::Kind::finite,
            num.leading_low_coefficient() / den.leading_low_coefficient()};
}

StepResponse make_step_response(std::vector<double> values, double step_h,
                                std::optional<double> steady) {
    StepResponse out;
    out.times.resize(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        out.times[k] = static_cast<double>(k) * step_h;
    }
    out.values = std::move(values);
    out.steady_state = steady;
    return out;
}

namespace {

/// sum_i c_i h^{-alpha_i} w_m^{(alpha_i)} for m = 0 .. count-1.
std::vector<double> combined_kernel(const FractionalPolynomial& p, double h,
                                    std::size_t count) {
    std::vector<double> kernel(count, 0.0);
    for (const auto& t : p.terms()) {
        const double scale = t.coefficient * std::pow(h, -t.exponent);
        const auto w = gl_weights(t.exponent, count);
        for (std::size_t m = 0; m < count; ++m) kernel[m] += scale * w.weights[m];
    }
    return kernel;
}

} // namespace

StepResponse simulate_step(const FractionalTransferFunction& tf,
                           const SimulationConfig& config) {
    config.validate();

    FractionalPolynomial num = tf.numerator();
    FractionalPolynomial den = tf.denominator();
    double lowest = den.min_exponent();
    if (!num.is_zero()) lowest = std::min(lowest, num.min_exponent());
    if (lowest < 0.0) {
        num = num.shifted(-lowest);
        den = den.shifted(-lowest);
    }

    const double h = config.step_h;
    const auto samples =
        static_cast<std::size_t>(std::floor(config.horizon / h + 0.5)) + 1;
    const std::size_t memory = config.memory_length == 0
                                   ? samples
                                   : std::min(samples, config.memory_length + 1);

    const auto a = combined_kernel(den, h, memory);
    const auto b = combined_kernel(num, h, memory);
    const double normalizer = a[0];
    if (normalizer == 0.0 || !std::isfinite(normalizer)) {
        throw SimulationError("simulation: GL normalizer is zero or not finite", 0);
    }

    // With u_k = 1 the input side at step k is the partial sum of b over the
    // (possibly truncated) memory window.
    std::vector<double> forcing(memory);
    double running = 0.0;
    for (std::size_t m = 0; m < memory; ++m) {
        running += b[m];
        forcing[m] = running;
    }

    std::vector<double> y(samples, 0.0);
    for (std::size_t k = 0; k < samples; ++k) {
        const std::size_t reach = std::min(k, memory - 1);
        double acc = forcing[reach];
        for (std::size_t m = 1; m <= reach; ++m) acc -= a[m] * y[k - m];
        y[k] = acc / normalizer;
        if (!std::isfinite(y[k])) {
            throw SimulationError("simulation: output is not finite", k);
        }
    }

    const auto ss = steady_state(tf);
    return make_step_response(std::move(y), h,
                              ss.is_finite() ? std::optional<double>(ss.value)
                                             : std::nullopt);
}

namespace {

/// Time at which the samples first reach `level`, interpolated linearly.
std::optional<double> first_crossing(const StepResponse& r, double level) {
    for (std::size_t k = 0; k < r.values.size(); ++k) {
        if (r.values[k] >= level) {
            if (k == 0) return r.times[0];
            const double y0 = r.values[k - 1];
            const double y1 = r.values[k];
            const double t0 = r.times[k - 1];
            const double t1 = r.times[k];
            return t0 + (level - y0) / (y1 - y0) * (t1 - t0);
        }
    }
    return std::nullopt;
}

} // namespace

ResponseMetrics measure_metrics(const StepResponse& response) {
    if (!response.steady_state) {
        throw MetricError("metrics: steady state is unbounded");
    }
    const double yss = *response.steady_state;
    if (!(yss > 0.0)) {
        throw MetricError("metrics: steady state must be positive, got " +
                          std::to_string(yss));
    }
    if (response.values.empty() || response.values.size() != response.times.size()) {
        throw MetricError("metrics: empty or inconsistent response");
    }

    ResponseMetrics m;
    const auto peak = std::max_element(response.values.begin(), response.values.end());
    const auto peak_index = static_cast<std::size_t>(peak - response.values.begin());
    m.peak_value = *peak;
    m.peak_time = response.times[peak_index];
    m.overshoot_fraction = m.peak_value > yss ? (m.peak_value - yss) / yss : 0.0;

    m.rise_time = first_crossing(response, yss);
    if (!m.rise_time) {
        const auto t10 = first_crossing(response, 0.1 * yss);
        const auto t90 = first_crossing(response, 0.9 * yss);
        if (t10 && t90) m.rise_time_10_90 = *t90 - *t10;
    }
    m.settled = std::abs(response.values.back() - yss) <= 0.02 * yss;
    return m;
}

void write_response_csv(std::ostream& out, const StepResponse& response) {
    const auto precision = out.precision(17);
    out << "time,output\n";
    for (std::size_t k = 0; k < response.values.size(); ++k) {
        out << response.times[k] << ',' << response.values[k] << '\n';
    }
    out.precision(precision);
}

} // namespace fopid
