#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fopid {

/// Minimization target. Must be pure: restarts may call it from several threads.
using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Box [lower_j, upper_j] per dimension.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const noexcept { return lower.size(); }
    bool contains(std::span<const double> x) const noexcept;

    /// Throws ConfigError on mismatched lengths, empty bounds, or lower >= upper.
    void validate() const;
};

/// What happens to a coordinate that leaves the search box.
enum class BoundHandling {
    clamp,    ///< snap to the violated bound (PSO also zeroes that velocity component)
    reflect,  ///< mirror about the violated bound (PSO also reverses the velocity component)
    resample, ///< redraw uniformly inside [lower, upper]
    bounce,   ///< redraw uniformly between the violated bound and the parent coordinate
};

struct PSOConfig {
    std::size_t population = 30;
    double omega = 0.729;
    double c1 = 1.494;
    double c2 = 1.494;
    /// Per-dimension velocity limit. Empty means upper - lower.
    std::vector<double> vmax;
    std::size_t max_iters = 5000;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
    BoundHandling bound_handling = BoundHandling::reflect;
};

struct DEConfig {
    std::size_t population = 30;
    double f_scale = 0.8;
    double cr = 0.96;
    std::size_t max_iters = 5000;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
    BoundHandling bound_handling = BoundHandling::reflect;
};

struct RunResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    /// Full iterations performed after initialization.
    std::size_t iterations_used = 0;
    /// Global best after initialization (index 0) and after every iteration.
    std::vector<double> best_fitness_trace;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// Population state handed to an observer after initialization (iteration 0)
/// and after each full iteration.
struct IterationSnapshot {
    std::size_t iteration = 0;
    std::span<const std::vector<double>> positions;
    std::span<const double> fitness;
    /// PSO only; empty for DE.
    std::span<const std::vector<double>> personal_best_positions;
    std::span<const double> personal_best_fitness;
    double global_best_fitness = 0.0;
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

/**
 * @brief Global-best particle swarm minimization.
 *
 * V <- omega V + c1 phi1 (p - X) + c2 phi2 (g - X), X <- X + V with phi1, phi2
 * drawn from (0, 1] per component per step, velocity limited to +/- vmax.
 * Components leaving the box are handled per config.bound_handling (mirrored
 * back inside with reversed velocity by default). Stops once the global best
 * drops below the tolerance (also checked right after initialization) or
 * after max_iters iterations.
 * Throws ConfigError for invalid bounds or configuration.
 */
RunResult pso_minimize(const ObjectiveFn& objective, const Bounds& bounds,
                       const PSOConfig& config,
                       const IterationObserver& observer = {});

/**
 * @brief DE/rand/1/bin minimization with greedy one-to-one selection.
 *
 * For each chromosome i, donor X_p + F (X_q - X_r) with p, q, r, i distinct;
 * trial takes the donor component where rand_j < CR. Out-of-box trial
 * components are handled per config.bound_handling (mirrored back inside by default).
 * Replacement happens in place, so later chromosomes of the same generation
 * already see improved parents. Throws ConfigError when population < 4.
 */
RunResult de_minimize(const ObjectiveFn& objective, const Bounds& bounds,
                      const DEConfig& config,
                      const IterationObserver& observer = {});

enum class Algorithm { pso, de };

std::string_view to_string(BoundHandling handling) noexcept;
/// Throws InputError for an unknown name.
BoundHandling parse_bound_handling(std::string_view text);

std::string_view to_string(Algorithm algorithm) noexcept;
/// Throws InputError for anything other than "pso" / "de".
Algorithm parse_algorithm(std::string_view text);

/// Seed of restart `index` derived deterministically from `base`.
std::uint64_t derive_seed(std::uint64_t base, std::size_t index) noexcept;

struct OptimizerSettings {
    Algorithm algorithm = Algorithm::de;
    PSOConfig pso;
    DEConfig de;
};

/// Picks one run out of a batch, or nothing.
using RunSelector =
    std::function<std::optional<std::size_t>(std::span<const RunResult>)>;

/// Lowest best_fitness, earliest index on ties.
std::optional<std::size_t> select_lowest_fitness(std::span<const RunResult> runs);

struct MultiRestartResult {
    std::vector<RunResult> runs;
    std::optional<std::size_t> selected;
};

/**
 * Runs `restarts` independent optimizations, restart k seeded with
 * derive_seed(base seed, k), then applies `selector` (lowest fitness by
 * default). Runs execute on up to `threads` workers (0 = hardware
 * concurrency); results do not depend on the thread count.
 */
MultiRestartResult multi_restart(const OptimizerSettings& settings,
                                 const ObjectiveFn& objective, const Bounds& bounds,
                                 std::size_t restarts, const RunSelector& selector = {},
                                 std::size_t threads = 1);

} // namespace fopid
