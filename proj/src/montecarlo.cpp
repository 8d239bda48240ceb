#include "recwalk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "recwalk/rng.hpp"

namespace recwalk::mc {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

using u128 = unsigned __int128;

// Per-realization jump source. Both generators are keyed by the same
// (seed, realization) stream; only the one matching the configured family is
// ever consumed, so draw k of a realization is independent of everything else.
class JumpSource {
  public:
    JumpSource(const SimConfig& cfg, std::uint64_t realization)
        : family_(cfg.jump),
          drift_(cfg.c),
          amp_((cfg.negate_jumps ? -cfg.sigma : cfg.sigma) *
               (cfg.jump == JumpFamily::uniform ? kSqrt3 : 1.0)),
          normal_(cfg.seed, realization),
          uniform_(cfg.seed, realization) {}

    // One walk increment: drift plus a zero-mean jump of std dev sigma.
    double next_step() {
        const double eta = family_ == JumpFamily::gaussian
                               ? normal_.next()
                               : 2.0 * uniform_.next_unit() - 1.0;
        return drift_ + amp_ * eta;
    }

  private:
    JumpFamily family_;
    double drift_;
    double amp_;
    rng::NormalSampler normal_;
    rng::Stream uniform_;
};

// Runs fn(worker_slot, r_begin, r_end) over a disjoint contiguous partition of
// realization indices [0, R). Slot w always owns the same range for a given
// worker count, and results are merged by the caller in slot order.
template <class Fn>
void for_each_realization_range(std::size_t R, unsigned workers, Fn&& fn) {
    if (workers <= 1 || R <= 1) {
        fn(0u, std::size_t{0}, R);
        return;
    }
    const unsigned W = static_cast<unsigned>(std::min<std::size_t>(workers, R));
    std::vector<std::thread> pool;
    pool.reserve(W);
    for (unsigned w = 0; w < W; ++w) {
        const std::size_t begin = R * w / W;
        const std::size_t end = R * (w + 1) / W;
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& t : pool) t.join();
}

double bernoulli_std_error(double p, std::size_t R) {
    const double v = p * (1.0 - p);
    return v > 0.0 ? std::sqrt(v / double(R)) : 0.0;
}

unsigned worker_slots(std::size_t R, unsigned workers) {
    return static_cast<unsigned>(std::min<std::size_t>(std::max(workers, 1u), std::max<std::size_t>(R, 1)));
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
        throw std::invalid_argument("SimConfig: sigma must be positive and finite");
    if (!std::isfinite(cfg.c))
        throw std::invalid_argument("SimConfig: c must be finite");
    if (cfg.n_steps < 1)
        throw std::invalid_argument("SimConfig: n_steps must be >= 1");
    if (cfg.n_realizations < 1)
        throw std::invalid_argument("SimConfig: n_realizations must be >= 1");
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RECORD_WALK_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

RecordStatsResult simulate_record_stats(const SimConfig& cfg, unsigned n_workers) {
    validate(cfg);
    const std::size_t N = cfg.n_steps;
    const std::size_t R = cfg.n_realizations;
    const unsigned W = worker_slots(R, resolve_workers(n_workers));

    struct Tally {
        std::vector<std::uint64_t> up_events;  // index 1..N
        std::vector<std::uint64_t> lo_events;
        std::vector<u128> up_sq;  // sum over walks of (cumulative count)^2
        std::vector<u128> lo_sq;
    };
    std::vector<Tally> local(W);
    for (auto& t : local) {
        t.up_events.assign(N + 1, 0);
        t.lo_events.assign(N + 1, 0);
        t.up_sq.assign(N + 1, 0);
        t.lo_sq.assign(N + 1, 0);
    }

    for_each_realization_range(R, W, [&](unsigned w, std::size_t r0, std::size_t r1) {
        Tally& t = local[w];
        for (std::size_t r = r0; r < r1; ++r) {
            JumpSource jumps(cfg, r);
            double x = 0.0, run_max = 0.0, run_min = 0.0;
            std::uint64_t cu = 1, cl = 1;  // entry 0 is both an upper and a lower record
            for (std::size_t k = 1; k <= N; ++k) {
                x += jumps.next_step();
                if (x > run_max) {
                    run_max = x;
                    ++t.up_events[k];
                    ++cu;
                }
                if (x < run_min) {
                    run_min = x;
                    ++t.lo_events[k];
                    ++cl;
                }
                t.up_sq[k] += u128(cu) * cu;
                t.lo_sq[k] += u128(cl) * cl;
            }
        }
    });

    // Merge integer tallies in slot order before any floating-point work.
    Tally total = std::move(local[0]);
    for (unsigned w = 1; w < W; ++w)
        for (std::size_t k = 0; k <= N; ++k) {
            total.up_events[k] += local[w].up_events[k];
            total.lo_events[k] += local[w].lo_events[k];
            total.up_sq[k] += local[w].up_sq[k];
            total.lo_sq[k] += local[w].lo_sq[k];
        }

    RecordStatsResult out;
    out.upper_rate.resize(N + 1);
    out.lower_rate.resize(N + 1);
    out.upper_mean.resize(N + 1);
    out.lower_mean.resize(N + 1);
    out.upper_rate[0] = out.lower_rate[0] = {1.0, 0.0, R};
    out.upper_mean[0] = out.lower_mean[0] = {1.0, 0.0, R};

    std::uint64_t up_cum = 0, lo_cum = 0;
    const double invR = 1.0 / double(R);
    for (std::size_t k = 1; k <= N; ++k) {
        up_cum += total.up_events[k];
        lo_cum += total.lo_events[k];

        const double pu = double(total.up_events[k]) * invR;
        const double pl = double(total.lo_events[k]) * invR;
        out.upper_rate[k] = {pu, bernoulli_std_error(pu, R), R};
        out.lower_rate[k] = {pl, bernoulli_std_error(pl, R), R};

        const double mu = 1.0 + double(up_cum) * invR;  // mean cumulative count
        const double ml = 1.0 + double(lo_cum) * invR;
        const double vu = std::max(0.0, double(total.up_sq[k]) * invR - mu * mu);
        const double vl = std::max(0.0, double(total.lo_sq[k]) * invR - ml * ml);
        out.upper_mean[k] = {mu, std::sqrt(vu * invR), R};
        out.lower_mean[k] = {ml, std::sqrt(vl * invR), R};
    }
    return out;
}

std::vector<SimEstimate> simulate_survival(const SimConfig& cfg, analytic::Sign sign,
                                           unsigned n_workers) {
    validate(cfg);
    const std::size_t N = cfg.n_steps;
    const std::size_t R = cfg.n_realizations;
    const unsigned W = worker_slots(R, resolve_workers(n_workers));
    const bool plus = sign == analytic::Sign::plus;

    // deaths[k] counts walks first touching or crossing zero at step k.
    std::vector<std::vector<std::uint64_t>> local(W);
    for (auto& d : local) d.assign(N + 1, 0);

    for_each_realization_range(R, W, [&](unsigned w, std::size_t r0, std::size_t r1) {
        auto& deaths = local[w];
        for (std::size_t r = r0; r < r1; ++r) {
            JumpSource jumps(cfg, r);
            double x = 0.0;
            for (std::size_t k = 1; k <= N; ++k) {
                x += jumps.next_step();
                if (plus ? (x <= 0.0) : (x >= 0.0)) {
                    ++deaths[k];
                    break;
                }
            }
        }
    });

    std::vector<std::uint64_t> deaths(N + 1, 0);
    for (unsigned w = 0; w < W; ++w)
        for (std::size_t k = 1; k <= N; ++k) deaths[k] += local[w][k];

    std::vector<SimEstimate> q(N + 1);
    q[0] = {1.0, 0.0, R};
    std::uint64_t dead = 0;
    for (std::size_t k = 1; k <= N; ++k) {
        dead += deaths[k];
        const double p = double(R - dead) / double(R);
        q[k] = {p, bernoulli_std_error(p, R), R};
    }
    return q;
}

SimEstimate estimate_asymptotic_rate(const SimConfig& cfg, std::size_t n_tail,
                                     unsigned n_workers) {
    validate(cfg);
    const std::size_t N = cfg.n_steps;
    if (n_tail == 0) n_tail = std::max<std::size_t>(N / 2, 1);
    if (n_tail > N)
        throw std::invalid_argument("estimate_asymptotic_rate: n_tail exceeds n_steps");
    const std::size_t R = cfg.n_realizations;
    const std::size_t tail_start = N - n_tail + 1;
    const unsigned W = worker_slots(R, resolve_workers(n_workers));

    struct Tally {
        std::uint64_t sum_k = 0;
        u128 sum_k2 = 0;
    };
    std::vector<Tally> local(W);

    for_each_realization_range(R, W, [&](unsigned w, std::size_t r0, std::size_t r1) {
        Tally& t = local[w];
        for (std::size_t r = r0; r < r1; ++r) {
            JumpSource jumps(cfg, r);
            double x = 0.0, run_max = 0.0;
            std::uint64_t K = 0;  // upper-record events landing in the tail window
            for (std::size_t k = 1; k <= N; ++k) {
                x += jumps.next_step();
                if (x > run_max) {
                    run_max = x;
                    if (k >= tail_start) ++K;
                }
            }
            t.sum_k += K;
            t.sum_k2 += u128(K) * K;
        }
    });

    std::uint64_t sum_k = 0;
    u128 sum_k2 = 0;
    for (unsigned w = 0; w < W; ++w) {
        sum_k += local[w].sum_k;
        sum_k2 += local[w].sum_k2;
    }

    const double invR = 1.0 / double(R);
    const double mean_k = double(sum_k) * invR;
    const double var_k = std::max(0.0, double(sum_k2) * invR - mean_k * mean_k);
    const double scale = 1.0 / double(n_tail);
    return {mean_k * scale, std::sqrt(var_k * invR) * scale, R};
}

std::vector<ScalingPoint> estimate_scaling_function(std::span<const double> c_values,
                                                    const SimConfig& base, double x_max,
                                                    unsigned n_workers) {
    if (c_values.empty())
        throw std::invalid_argument("estimate_scaling_function: no drift values");
    std::vector<ScalingPoint> out;
    for (const double c : c_values) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("estimate_scaling_function: drifts must be positive");
        SimConfig cfg = base;
        cfg.c = c;
        const double r2 = (c / base.sigma) * (c / base.sigma);
        if (x_max > 0.0)
            cfg.n_steps = std::max<std::size_t>(1, std::size_t(std::ceil(x_max / r2)));
        validate(cfg);

        const std::size_t N = cfg.n_steps;
        const std::size_t R = cfg.n_realizations;
        const unsigned W = worker_slots(R, resolve_workers(n_workers));

        std::vector<std::vector<std::uint64_t>> local(W);
        for (auto& t : local) t.assign(N + 1, 0);

        for_each_realization_range(R, W, [&](unsigned w, std::size_t r0, std::size_t r1) {
            auto& events = local[w];
            for (std::size_t r = r0; r < r1; ++r) {
                JumpSource jumps(cfg, r);
                double x = 0.0, run_max = 0.0;
                for (std::size_t k = 1; k <= N; ++k) {
                    x += jumps.next_step();
                    if (x > run_max) {
                        run_max = x;
                        ++events[k];
                    }
                }
            }
        });

        std::vector<std::uint64_t> events(N + 1, 0);
        for (unsigned w = 0; w < W; ++w)
            for (std::size_t k = 1; k <= N; ++k) events[k] += local[w][k];

        // Logarithmic step grid, at most 72 distinct steps in [1, N].
        std::vector<std::size_t> grid;
        const int kPoints = 72;
        const double lnN = std::log(double(N));
        for (int i = 0; i < kPoints; ++i) {
            const double f = kPoints == 1 ? 0.0 : double(i) / double(kPoints - 1);
            const auto n = std::size_t(std::llround(std::exp(f * lnN)));
            const std::size_t clamped = std::clamp<std::size_t>(n, 1, N);
            if (grid.empty() || clamped > grid.back()) grid.push_back(clamped);
        }

        const double invR = 1.0 / double(R);
        const double g_scale = base.sigma / c;
        for (const std::size_t n : grid) {
            const double p = double(events[n]) * invR;
            ScalingPoint pt;
            pt.c = c;
            pt.n = n;
            pt.x = r2 * double(n);
            pt.g = p * g_scale;
            pt.g_std_error = bernoulli_std_error(p, R) * g_scale;
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace recwalk::mc
