#include "recwalk/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace recwalk::series {

namespace {

void require_nonempty(const PowerSeries& s, const char* who) {
    if (s.coeffs.empty()) throw std::invalid_argument(std::string(who) + ": empty series");
}

}  // namespace

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    require_nonempty(a, "series_mul");
    require_nonempty(b, "series_mul");
    const std::size_t N = std::min(a.order(), b.order());
    PowerSeries r;
    r.coeffs.assign(N + 1, 0.0);
    for (std::size_t k = 0; k <= N; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j) acc += a.coeffs[j] * b.coeffs[k - j];
        r.coeffs[k] = acc;
    }
    return r;
}

PowerSeries series_inv(const PowerSeries& a) {
    require_nonempty(a, "series_inv");
    if (std::abs(a.coeffs[0]) <= 1e-30)
        throw std::invalid_argument("non-invertible series");
    const std::size_t N = a.order();
    PowerSeries b;
    b.coeffs.assign(N + 1, 0.0);
    const double inv0 = 1.0 / a.coeffs[0];
    b.coeffs[0] = inv0;
    for (std::size_t J = 1; J <= N; ++J) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= J; ++k) acc += a.coeffs[k] * b.coeffs[J - k];
        b.coeffs[J] = -inv0 * acc;
    }
    return b;
}

PowerSeries series_exp(const PowerSeries& a) {
    require_nonempty(a, "series_exp");
    if (a.coeffs[0] != 0.0)
        throw std::invalid_argument("series_exp: constant term must be exactly 0");
    const std::size_t N = a.order();
    PowerSeries b;
    b.coeffs.assign(N + 1, 0.0);
    b.coeffs[0] = 1.0;
    // J*b_J = sum_{k=1..J} (k*a_k) * b_{J-k}
    for (std::size_t J = 1; J <= N; ++J) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= J; ++k)
            acc += double(k) * a.coeffs[k] * b.coeffs[J - k];
        b.coeffs[J] = acc / double(J);
    }
    return b;
}

PowerSeries sparre_andersen_survival(std::span<const double> p) {
    PowerSeries inner;
    inner.coeffs.assign(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pn = p[i];
        if (!(pn >= 0.0 && pn <= 1.0))
            throw std::invalid_argument("sparre_andersen_survival: p(n) outside [0,1] at n=" +
                                        std::to_string(i + 1));
        inner.coeffs[i + 1] = pn / double(i + 1);
    }
    return series_exp(inner);
}

std::vector<double> gaussian_sign_probabilities(const analytic::DriftParams& params,
                                                analytic::Sign sign, std::size_t N) {
    analytic::validate(params);
    std::vector<double> p(N);
    for (std::size_t i = 0; i < N; ++i)
        p[i] = analytic::p_plus_minus(long(i + 1), params, sign);
    return p;
}

PowerSeries first_passage_from_survival(const PowerSeries& q) {
    require_nonempty(q, "first_passage_from_survival");
    if (std::abs(q.coeffs[0] - 1.0) > 1e-12)
        throw std::invalid_argument("first_passage_from_survival: q(0) must be 1");
    PowerSeries f;
    f.coeffs.assign(q.order() + 1, 0.0);
    for (std::size_t n = 1; n <= q.order(); ++n)
        f.coeffs[n] = q.coeffs[n - 1] - q.coeffs[n];
    return f;
}

PiSweep::PiSweep(PowerSeries f_minus, PowerSeries q_minus)
    : f_(std::move(f_minus)), current_(std::move(q_minus)) {
    require_nonempty(f_, "PiSweep");
    require_nonempty(current_, "PiSweep");
    if (f_.coeffs[0] != 0.0)
        throw std::invalid_argument("PiSweep: f(0) must be 0");
    if (std::abs(current_.coeffs[0] - 1.0) > 1e-12)
        throw std::invalid_argument("PiSweep: q(0) must be 1");
}

void PiSweep::advance() {
    current_ = series_mul(current_, f_);
    ++m_;
}

PowerSeries record_number_distribution(const PowerSeries& f_minus,
                                       const PowerSeries& q_minus, std::size_t m) {
    if (m < 1) throw std::invalid_argument("record_number_distribution: m must be >= 1");
    PiSweep sweep(f_minus, q_minus);
    while (sweep.m() < m) sweep.advance();
    return sweep.current();
}

PowerSeries mean_record_series(const PowerSeries& q_minus) {
    require_nonempty(q_minus, "mean_record_series");
    if (std::abs(q_minus.coeffs[0] - 1.0) > 1e-12)
        throw std::invalid_argument("mean_record_series: q(0) must be 1");
    // (1-z)^2 * qtilde, then invert.
    const std::size_t N = q_minus.order();
    PowerSeries d;
    d.coeffs.assign(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) {
        double v = q_minus.coeffs[n];
        if (n >= 1) v -= 2.0 * q_minus.coeffs[n - 1];
        if (n >= 2) v += q_minus.coeffs[n - 2];
        d.coeffs[n] = v;
    }
    return series_inv(d);
}

PowerSeries record_rate_from_mean(const PowerSeries& m_series) {
    require_nonempty(m_series, "record_rate_from_mean");
    PowerSeries p;
    p.coeffs.assign(m_series.order() + 1, 0.0);
    p.coeffs[0] = 1.0;
    for (std::size_t n = 1; n <= m_series.order(); ++n)
        p.coeffs[n] = m_series.coeffs[n] - m_series.coeffs[n - 1];
    return p;
}

}  // namespace recwalk::series
