#include "recwalk/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace recwalk::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Mills-style tail factor of the large-drift branch: u(r) = e^{-r^2/2}/(sqrt(2 pi) r).
double large_drift_tail(double r) { return std::exp(-0.5 * r * r) / (kSqrt2Pi * r); }

}  // namespace

void validate(const DriftParams& p) {
    if (!std::isfinite(p.c) || !std::isfinite(p.sigma))
        throw std::invalid_argument("DriftParams: fields must be finite");
    if (p.sigma <= 0.0) throw std::invalid_argument("DriftParams: sigma must be > 0");
}

double pi_symmetric(long m, long n) {
    if (n < 0) throw std::invalid_argument("pi_symmetric: n must be >= 0");
    if (m < 1 || m > n + 1)
        throw std::invalid_argument("pi_symmetric: m must lie in [1, n+1]");
    if (n == 0) return 1.0;
    // C(2n-m+1, n) * 2^(m-2n-1), evaluated in log space (overflow-free).
    const double a = double(2 * n - m + 1);
    const double ln_binom = std::lgamma(a + 1.0) - std::lgamma(double(n) + 1.0) -
                            std::lgamma(a - double(n) + 1.0);
    return std::exp(ln_binom + (double(m) - 2.0 * double(n) - 1.0) * std::numbers::ln2);
}

double record_rate_symmetric(long n) {
    if (n < 0) throw std::invalid_argument("record_rate_symmetric: n must be >= 0");
    double q = 1.0;
    for (long i = 1; i <= n; ++i) q *= double(2 * i - 1) / double(2 * i);
    return q;
}

double mean_records_symmetric(long n) {
    if (n < 0) throw std::invalid_argument("mean_records_symmetric: n must be >= 0");
    return double(2 * n + 1) * record_rate_symmetric(n);
}

double p_plus_minus(long n, const DriftParams& p, Sign sign) {
    if (n < 1) throw std::invalid_argument("p_plus_minus: n must be >= 1");
    validate(p);
    // 0.5*(1 +- erf(a)) == erfc(-+a)/2; erfc keeps the tiny branch accurate.
    const double a = std::sqrt(0.5 * double(n)) * p.ratio();
    return 0.5 * std::erfc(sign == Sign::plus ? -a : a);
}

double survival_small_drift(long n, const DriftParams& p, Sign sign) {
    if (n < 1) throw std::invalid_argument("survival_small_drift: n must be >= 1");
    validate(p);
    const double corr = p.ratio() / kSqrt2;
    return 1.0 / std::sqrt(kPi * double(n)) + (sign == Sign::plus ? corr : -corr);
}

double first_passage_small_drift(long n, const DriftParams& p, Sign sign) {
    if (n < 1) throw std::invalid_argument("first_passage_small_drift: n must be >= 1");
    validate(p);
    const double nn = double(n);
    const double sym = 0.5 / std::sqrt(kPi) * std::pow(nn, -1.5);
    const double corr = p.ratio() / (kSqrt2 * kPi) / std::sqrt(nn);
    return sym + (sign == Sign::plus ? corr : -corr);
}

double mean_records_small_drift(long n, const DriftParams& p) {
    if (n < 1) throw std::invalid_argument("mean_records_small_drift: n must be >= 1");
    validate(p);
    const double rn = std::sqrt(double(n));
    const double corr = p.ratio() * (kSqrt2 / kPi) * (double(n) * std::atan(rn) - rn);
    return mean_records_symmetric(n) + corr;
}

double record_rate_small_drift(long n, const DriftParams& p, bool simplified) {
    if (n < 1) throw std::invalid_argument("record_rate_small_drift: n must be >= 1");
    validate(p);
    const double corr = simplified ? 1.0 / kSqrt2
                                   : (kSqrt2 / kPi) * std::atan(std::sqrt(double(n)));
    return 1.0 / std::sqrt(kPi * double(n)) + p.ratio() * corr;
}

double survival_large_drift(long n, const DriftParams& p) {
    if (n < 1) throw std::invalid_argument("survival_large_drift: n must be >= 1");
    validate(p);
    if (p.c <= 0.0) throw std::invalid_argument("survival_large_drift: requires c > 0");
    const double nn = double(n);
    const double r = p.ratio();
    return std::exp(-0.5 * r * r * nn) / (r * std::sqrt(2.0 * kPi * nn * nn * nn));
}

double mean_records_large_drift(long n, const DriftParams& p) {
    if (n < 0) throw std::invalid_argument("mean_records_large_drift: n must be >= 0");
    validate(p);
    if (p.c <= 0.0) throw std::invalid_argument("mean_records_large_drift: requires c > 0");
    return double(n) * (1.0 - large_drift_tail(p.ratio()));
}

double asymptotic_record_rate_small_branch(const DriftParams& p, double slope) {
    validate(p);
    return slope * p.ratio();
}

double asymptotic_record_rate_large_branch(const DriftParams& p) {
    validate(p);
    if (p.c <= 0.0)
        throw std::invalid_argument("asymptotic_record_rate_large_branch: requires c > 0");
    return 1.0 - large_drift_tail(p.ratio());
}

double asymptotic_rate_crossover_ratio(double slope) {
    if (!(slope > 0.0)) throw std::invalid_argument("crossover ratio: slope must be > 0");
    // The branches slope*r and 1 - u(r) never meet (the linear branch lies
    // strictly above for every r > 0), so the switch point minimizes the gap:
    // solve slope == u(r)*(r + 1/r), whose left side is the gap's derivative
    // zero. u(r)*(r + 1/r) decreases monotonically from +inf to 0.
    double lo = 1e-3, hi = 50.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = large_drift_tail(mid) * (mid + 1.0 / mid);
        (v > slope ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double asymptotic_record_rate(const DriftParams& p, double slope) {
    validate(p);
    if (p.c <= 0.0) throw std::invalid_argument("asymptotic_record_rate: requires c > 0");
    static const double default_threshold = asymptotic_rate_crossover_ratio(kSmallDriftRateSlope);
    const double threshold = (slope == kSmallDriftRateSlope)
                                 ? default_threshold
                                 : asymptotic_rate_crossover_ratio(slope);
    const double r = p.ratio();
    return r < threshold ? slope * r : 1.0 - large_drift_tail(r);
}

double crossover_time(const DriftParams& p) {
    validate(p);
    if (p.c == 0.0) throw std::invalid_argument("crossover_time: requires c != 0");
    const double inv = p.sigma / p.c;
    return inv * inv;
}

double scaling_function_limits(double x, double slope) {
    if (!(x > 0.0)) throw std::invalid_argument("scaling_function_limits: x must be > 0");
    const double small_branch = 1.0 / std::sqrt(kPi * x);
    return small_branch > slope ? small_branch : slope;
}

}  // namespace recwalk::analytic
