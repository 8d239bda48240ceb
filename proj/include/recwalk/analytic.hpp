#pragma once
// analytic.hpp -- closed-form and asymptotic record/survival statistics of the
// drifted random walk X_n = X_{n-1} + xi_n + c with iid symmetric jumps of
// standard deviation sigma.
//
// Exact symmetric-walk results hold for any continuous jump distribution
// (Sparre Andersen universality); the drift corrections assume Gaussian jumps.
// Validity regimes are documented per function but never enforced: callers get
// the formula value regardless.

#include <cstddef>

namespace recwalk::analytic {

struct DriftParams {
    double c = 0.0;      // drift per step, walk-displacement units
    double sigma = 1.0;  // jump standard deviation, > 0

    double ratio() const { return c / sigma; }
};

// Throws std::invalid_argument unless sigma > 0 and both fields are finite.
void validate(const DriftParams& p);

enum class Sign { plus, minus };

// Empirical small-drift slope of the asymptotic record rate P(c) ~ slope*(c/sigma),
// 3 significant figures; callers may override wherever it is a parameter.
inline constexpr double kSmallDriftRateSlope = 1.39;

// ---------------- symmetric walk, exact ----------------

// Probability that a symmetric walk has exactly m records after n steps:
// Pi(m,n) = C(2n-m+1, n) * 2^(m-2n-1).  Requires 1 <= m <= n+1.
// The binomial identity is cross-validated against the generating-function
// engine in the test suite (see series module); the variant with m as the
// lower binomial index fails already at (m,n) = (1,0).
double pi_symmetric(long m, long n);

// P_n = q(n) = C(2n,n) * 2^(-2n), via the stable multiplicative recurrence
// q(n) = q(n-1)*(2n-1)/(2n); exact record rate and survival probability of the
// symmetric walk. Stable for n up to at least 10^6.
double record_rate_symmetric(long n);

// m_n = (2n+1) * C(2n,n) * 2^(-2n)  ~  2*sqrt(n/pi).
double mean_records_symmetric(long n);

// ---------------- drifted Gaussian walk ----------------

// p_+(n) / p_-(n): probability of being above/below the origin at step n,
// 0.5*(1 +- erf(sqrt(n/2) c/sigma)). Evaluated through erfc to avoid
// cancellation for large |c|/sigma.
double p_plus_minus(long n, const DriftParams& p, Sign sign);

// q_+-(n) ~ 1/sqrt(pi n) +- c/(sqrt(2) sigma).   Regime: c/sigma << n^(-1/2).
double survival_small_drift(long n, const DriftParams& p, Sign sign);

// f_+-(n) ~ n^(-3/2)/(2 sqrt(pi)) +- c n^(-1/2)/(sqrt(2) pi sigma).  Same regime.
double first_passage_small_drift(long n, const DriftParams& p, Sign sign);

// m_n(c) ~ m_n(0) + (c/sigma)(sqrt2/pi)(n*arctan(sqrt n) - sqrt n), using the
// exact symmetric term for small-n accuracy.
double mean_records_small_drift(long n, const DriftParams& p);

// P_n(c) ~ 1/sqrt(pi n) + (c/sigma)(sqrt2/pi) arctan(sqrt n); with
// `simplified` the correction saturates at its n->infinity value c/(sqrt2 sigma).
double record_rate_small_drift(long n, const DriftParams& p, bool simplified = false);

// q_-(n) ~ sigma/(c sqrt(2 pi n^3)) * exp(-c^2 n / (2 sigma^2)).
// Regime: c/sigma >> 1, c > 0.
double survival_large_drift(long n, const DriftParams& p);

// m_n(c) ~ n * (1 - sigma/(sqrt(2 pi) c) * exp(-c^2/(2 sigma^2))).  Same regime.
double mean_records_large_drift(long n, const DriftParams& p);

// ---------------- asymptotic record rate P(c) ----------------
// Two asymptotic branches: slope*(c/sigma) for small drift, and
// 1 - sigma/(sqrt(2 pi) c) exp(-c^2/(2 sigma^2)) for large drift.
// The branches never intersect (the linear branch lies strictly above), so the
// piecewise switch happens at the gap-minimizing ratio (~0.569 for slope 1.39),
// solved numerically. Neither asymptote is accurate near the switch; both
// branch values stay individually accessible.

double asymptotic_record_rate_small_branch(const DriftParams& p,
                                           double slope = kSmallDriftRateSlope);
double asymptotic_record_rate_large_branch(const DriftParams& p);

// Branch-switch ratio c/sigma for a given small-drift slope.
double asymptotic_rate_crossover_ratio(double slope = kSmallDriftRateSlope);

// Piecewise P(c); requires c > 0.
double asymptotic_record_rate(const DriftParams& p,
                              double slope = kSmallDriftRateSlope);

// n* = (sigma/c)^2 -- the step scale separating diffusive from drift-dominated
// record statistics; an order of magnitude, not a sharp boundary.
double crossover_time(const DriftParams& p);

// Asymptotic branches of the scaling function g(x), where
// P_n(c) = (c/sigma) g((c/sigma)^2 n): 1/sqrt(pi x) for small x, `slope` for
// large x; switched where they cross (continuous by construction). g is only
// known asymptotically, so no accuracy claim holds near the switch.
double scaling_function_limits(double x, double slope = kSmallDriftRateSlope);

}  // namespace recwalk::analytic
