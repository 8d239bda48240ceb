#pragma once
// montecarlo.hpp -- reproducible parallel Monte Carlo for drifted random walks.
//
// Estimates per-step record rates, mean record counts, survival probabilities,
// the asymptotic record rate, and the small-drift scaling function.
//
// Reproducibility contract: identical (config, worker-independent seed) give
// bit-identical results for any worker count. Workers own disjoint realization
// ranges, accumulate integer tallies locally, and the tallies are merged by
// commutative integer addition before any floating-point division. Jump draws
// depend only on (seed, realization, draw index) -- never on the drift -- so
// runs at different c share common random numbers, and negating the jump
// stream (test mode) mirrors the walk exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "recwalk/analytic.hpp"

namespace recwalk::mc {

enum class JumpFamily { gaussian, uniform };

struct SimConfig {
    JumpFamily jump = JumpFamily::gaussian;
    double sigma = 1.0;              // jump standard deviation (> 0); the uniform
                                     // family has half-width sqrt(3)*sigma
    double c = 0.0;                  // drift per step
    std::size_t n_steps = 100;       // >= 1
    std::size_t n_realizations = 1'000'000;  // >= 1
    std::uint64_t seed = 42;
    bool negate_jumps = false;       // test mode: flips the sign of every jump draw
};

// Throws std::invalid_argument on invalid fields.
void validate(const SimConfig& cfg);

struct SimEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_realizations = 0;
};

struct RecordStatsResult {
    std::vector<SimEstimate> upper_rate;  // P_n, index 0..n_steps (entry 0 = 1)
    std::vector<SimEstimate> lower_rate;
    std::vector<SimEstimate> upper_mean;  // m_n, index 0..n_steps (entry 0 = 1)
    std::vector<SimEstimate> lower_mean;
};

// Resolves a worker count: `requested` if nonzero, else the environment
// variable RECORD_WALK_THREADS if set and positive, else hardware concurrency.
unsigned resolve_workers(unsigned requested);

// Per-step record-rate and mean-record-count estimates, upper and lower.
RecordStatsResult simulate_record_stats(const SimConfig& cfg, unsigned n_workers = 0);

// Per-step survival estimates q_sign(n): the fraction of walks with X_k
// strictly above (plus) or below (minus) zero for all 1 <= k <= n. A walk
// landing exactly on zero counts as absorbed. Index 0..n_steps, entry 0 = 1.
std::vector<SimEstimate> simulate_survival(const SimConfig& cfg, analytic::Sign sign,
                                           unsigned n_workers = 0);

// Upper-record rate averaged over the final n_tail steps (default: final half)
// and over realizations; the standard error comes from the realization-level
// spread of per-walk tail rates, so step-to-step correlation is handled.
SimEstimate estimate_asymptotic_rate(const SimConfig& cfg, std::size_t n_tail = 0,
                                     unsigned n_workers = 0);

struct ScalingPoint {
    double c;
    std::size_t n;
    double x;            // (c/sigma)^2 * n
    double g;            // P_n(c) * sigma / c
    double g_std_error;
};

// Record-rate curves for several drifts on the scaling axes. For each c the
// walk length is ceil(x_max / (c/sigma)^2) when x_max > 0, else base.n_steps;
// points are recorded on a logarithmic step grid (<= 72 points per drift).
// All drifts reuse base.seed, which by the stream design means common random
// numbers across the curves.
std::vector<ScalingPoint> estimate_scaling_function(std::span<const double> c_values,
                                                    const SimConfig& base,
                                                    double x_max = 0.0,
                                                    unsigned n_workers = 0);

}  // namespace recwalk::mc
