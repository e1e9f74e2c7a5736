#include "fopid/optimizers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "fopid/errors.hpp"

namespace fopid {

bool Bounds::contains(std::span<const double> x) const noexcept {
    if (x.size() != size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= lower[j] && x[j] <= upper[j])) return false;
    }
    return true;
}

void Bounds::validate() const {
    if (lower.empty() || lower.size() != upper.size()) {
        throw ConfigError("bounds: lower and upper must be non-empty and of equal length");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || !(lower[j] < upper[j])) {
            throw ConfigError("bounds: dimension " + std::to_string(j) +
                              " needs finite lower < upper");
        }
    }
}

namespace {

using Population = std::vector<std::vector<double>>;

class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    /// [0, 1)
    double unit() { return unit_(engine_); }
    /// (0, 1]
    double unit_open_low() { return 1.0 - unit_(engine_); }
    double in(double lo, double hi) { return lo + unit() * (hi - lo); }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

double safe_eval(const ObjectiveFn& objective, std::span<const double> x) {
    const double f = objective(x);
    return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
}

void check_common(const Bounds& bounds, std::size_t population, std::size_t minimum,
                  double tolerance, const char* who) {
    bounds.validate();
    if (population < minimum) {
        throw ConfigError(std::string(who) + ": population must be at least " +
                          std::to_string(minimum));
    }
    if (std::isnan(tolerance) || tolerance < 0.0) {
        throw ConfigError(std::string(who) + ": tolerance must be >= 0");
    }
}

std::size_t argmin(std::span<const double> values) {
    return static_cast<std::size_t>(
        std::min_element(values.begin(), values.end()) - values.begin());
}

} // namespace

RunResult pso_minimize(const ObjectiveFn& objective, const Bounds& bounds,
                       const PSOConfig& config, const IterationObserver& observer) {
    check_common(bounds, config.population, 2, config.tolerance, "pso");
    const std::size_t n = bounds.size();
    const std::size_t m = config.population;

    std::vector<double> vmax = config.vmax;
    if (vmax.empty()) {
        vmax.resize(n);
        for (std::size_t j = 0; j < n; ++j) vmax[j] = bounds.upper[j] - bounds.lower[j];
    }
    if (vmax.size() != n ||
        std::any_of(vmax.begin(), vmax.end(), [](double v) { return !(v > 0.0); })) {
        throw ConfigError("pso: vmax must hold one positive entry per dimension");
    }

    UniformSource rng(config.seed);
    Population x(m, std::vector<double>(n));
    Population v(m, std::vector<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            x[i][j] = rng.in(bounds.lower[j], bounds.upper[j]);
            v[i][j] = rng.in(-vmax[j], vmax[j]);
        }
    }
    std::vector<double> fitness(m);
    for (std::size_t i = 0; i < m; ++i) fitness[i] = safe_eval(objective, x[i]);

    Population personal = x;
    std::vector<double> personal_fitness = fitness;
    std::size_t leader = argmin(personal_fitness);
    std::vector<double> global = personal[leader];
    double global_fitness = personal_fitness[leader];

    RunResult result;
    result.seed = config.seed;
    result.best_fitness_trace.push_back(global_fitness);

    auto notify = [&](std::size_t iteration) {
        if (observer) {
            observer({iteration, x, fitness, personal, personal_fitness, global_fitness});
        }
    };
    notify(0);

    std::size_t iteration = 0;
    while (!(global_fitness < config.tolerance) && iteration < config.max_iters) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double phi1 = rng.unit_open_low();
                const double phi2 = rng.unit_open_low();
                double vel = config.omega * v[i][j] +
                             config.c1 * phi1 * (personal[i][j] - x[i][j]) +
                             config.c2 * phi2 * (global[j] - x[i][j]);
                vel = std::clamp(vel, -vmax[j], vmax[j]);
                double pos = x[i][j] + vel;
                const double lo = bounds.lower[j];
                const double hi = bounds.upper[j];
                if (pos < lo || pos > hi) {
                    const bool below = pos < lo;
                    switch (config.bound_handling) {
                    case BoundHandling::clamp:
                        pos = below ? lo : hi;
                        vel = 0.0;
                        break;
                    case BoundHandling::reflect:
                        pos = below ? lo + (lo - pos) : hi - (pos - hi);
                        vel = -vel;
                        break;
                    case BoundHandling::resample:
                        pos = rng.in(lo, hi);
                        break;
                    case BoundHandling::bounce:
                        pos = below ? rng.in(lo, x[i][j]) : rng.in(x[i][j], hi);
                        break;
                    }
                }
                x[i][j] = std::clamp(pos, lo, hi);
                v[i][j] = vel;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            fitness[i] = safe_eval(objective, x[i]);
            if (fitness[i] < personal_fitness[i]) {
                personal_fitness[i] = fitness[i];
                personal[i] = x[i];
            }
        }
        leader = argmin(personal_fitness);
        if (personal_fitness[leader] < global_fitness) {
            global_fitness = personal_fitness[leader];
            global = personal[leader];
        }
        ++iteration;
        result.best_fitness_trace.push_back(global_fitness);
        notify(iteration);
    }

    result.best_position = std::move(global);
    result.best_fitness = global_fitness;
    result.iterations_used = iteration;
    result.converged = global_fitness < config.tolerance;
    return result;
}

RunResult de_minimize(const ObjectiveFn& objective, const Bounds& bounds,
                      const DEConfig& config, const IterationObserver& observer) {
    check_common(bounds, config.population, 4, config.tolerance, "de");
    if (!(config.f_scale > 0.0) || !(config.cr >= 0.0 && config.cr <= 1.0)) {
        throw ConfigError("de: need F > 0 and CR in [0, 1]");
    }
    const std::size_t n = bounds.size();
    const std::size_t m = config.population;

    UniformSource rng(config.seed);
    Population x(m, std::vector<double>(n));
    for (auto& member : x) {
        for (std::size_t j = 0; j < n; ++j) {
            member[j] = rng.in(bounds.lower[j], bounds.upper[j]);
        }
    }
    std::vector<double> fitness(m);
    for (std::size_t i = 0; i < m; ++i) fitness[i] = safe_eval(objective, x[i]);

    std::size_t best = argmin(fitness);
    RunResult result;
    result.seed = config.seed;
    result.best_fitness_trace.push_back(fitness[best]);

    auto notify = [&](std::size_t iteration) {
        if (observer) observer({iteration, x, fitness, {}, {}, fitness[best]});
    };
    notify(0);

    std::vector<double> trial(n);
    std::size_t iteration = 0;
    while (!(fitness[best] < config.tolerance) && iteration < config.max_iters) {
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t p, q, r;
            do { p = rng.index(m); } while (p == i);
            do { q = rng.index(m); } while (q == i || q == p);
            do { r = rng.index(m); } while (r == i || r == p || r == q);

            for (std::size_t j = 0; j < n; ++j) {
                const double donor = x[p][j] + config.f_scale * (x[q][j] - x[r][j]);
                double value = rng.unit() < config.cr ? donor : x[i][j];
                const double lo = bounds.lower[j];
                const double hi = bounds.upper[j];
                if (value < lo || value > hi) {
                    const bool below = value < lo;
                    switch (config.bound_handling) {
                    case BoundHandling::clamp:
                        value = below ? lo : hi;
                        break;
                    case BoundHandling::reflect:
                        value = std::clamp(below ? lo + (lo - value) : hi - (value - hi), lo, hi);
                        break;
                    case BoundHandling::resample:
                        value = rng.in(lo, hi);
                        break;
                    case BoundHandling::bounce:
                        value = below ? rng.in(lo, x[i][j]) : rng.in(x[i][j], hi);
                        break;
                    }
                }
                trial[j] = value;
            }
            const double trial_fitness = safe_eval(objective, trial);
            if (trial_fitness < fitness[i]) {
                x[i] = trial;
                fitness[i] = trial_fitness;
                if (trial_fitness < fitness[best]) best = i;
            }
        }
        ++iteration;
        result.best_fitness_trace.push_back(fitness[best]);
        notify(iteration);
    }

    result.best_position = x[best];
    result.best_fitness = fitness[best];
    result.iterations_used = iteration;
    result.converged = fitness[best] < config.tolerance;
    return result;
}

std::string_view to_string(BoundHandling handling) noexcept {
    switch (handling) {
    case BoundHandling::clamp: return "clamp";
    case BoundHandling::reflect: return "reflect";
    case BoundHandling::resample: return "resample";
    case BoundHandling::bounce: return "bounce";
    }
    return "reflect";
}

BoundHandling parse_bound_handling(std::string_view text) {
    if (text == "clamp") return BoundHandling::clamp;
    if (text == "reflect") return BoundHandling::reflect;
    if (text == "resample") return BoundHandling::resample;
    if (text == "bounce") return BoundHandling::bounce;
    throw InputError("unknown bound handling '" + std::string(text) +
                     "' (expected clamp, reflect, resample or bounce)");
}

std::string_view to_string(Algorithm algorithm) noexcept {
    return algorithm == Algorithm::pso ? "pso" : "de";
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "pso") return Algorithm::pso;
    if (text == "de") return Algorithm::de;
    throw InputError("unknown algorithm '" + std::string(text) + "' (expected pso or de)");
}

std::uint64_t derive_seed(std::uint64_t base, std::size_t index) noexcept {
    // splitmix64 step over (base, index)
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::optional<std::size_t> select_lowest_fitness(std::span<const RunResult> runs) {
    if (runs.empty()) return std::nullopt;
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k) {
        if (runs[k].best_fitness < runs[best].best_fitness) best = k;
    }
    return best;
}

MultiRestartResult multi_restart(const OptimizerSettings& settings,
                                 const ObjectiveFn& objective, const Bounds& bounds,
                                 std::size_t restarts, const RunSelector& selector,
                                 std::size_t threads) {
    if (restarts == 0) {
        throw ConfigError("multi_restart: need at least one restart");
    }
    const std::uint64_t base = settings.algorithm == Algorithm::pso ? settings.pso.seed
                                                                    : settings.de.seed;
    MultiRestartResult out;
    out.runs.resize(restarts);

    auto run_one = [&](std::size_t k) {
        const std::uint64_t seed = derive_seed(base, k);
        if (settings.algorithm == Algorithm::pso) {
            PSOConfig c = settings.pso;
            c.seed = seed;
            out.runs[k] = pso_minimize(objective, bounds, c);
        } else {
            DEConfig c = settings.de;
            c.seed = seed;
            out.runs[k] = de_minimize(objective, bounds, c);
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, restarts);
    if (threads <= 1) {
        for (std::size_t k = 0; k < restarts; ++k) run_one(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> workers;
            workers.reserve(threads);
            for (std::size_t t = 0; t < threads; ++t) {
                workers.emplace_back([&] {
                    for (std::size_t k = next++; k < restarts; k = next++) {
                        try {
                            run_one(k);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }

    out.selected = selector ? selector(out.runs) : select_lowest_fitness(out.runs);
    if (out.selected && *out.selected >= out.runs.size()) {
        throw ConfigError("multi_restart: selector returned an out-of-range index");
    }
    return out;
}

} // namespace fopid
