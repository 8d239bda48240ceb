#pragma once
// series.hpp -- truncated power-series engine for the Sparre Andersen identity.
//
// Ground-truth oracle of the repository: computes survival q(n), first-passage
// f(n), the record-number distribution Pi(m,n), and the mean record number
// m_n(c) for arbitrary drift, exactly up to truncation and rounding.
// All products are plain O(N^2) Cauchy convolutions in binary64; the
// accumulated error per coefficient is of order N*epsilon. Negative rounding
// residue is never clamped inside the pipeline.

#include <cstddef>
#include <span>
#include <vector>

#include "recwalk/analytic.hpp"

namespace recwalk::series {

struct PowerSeries {
    std::vector<double> coeffs;  // a_0 .. a_N

    std::size_t order() const { return coeffs.size() - 1; }
    double operator[](std::size_t n) const { return coeffs[n]; }
};

// Cauchy product, truncated to the smaller operand order.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

// Multiplicative inverse; requires |a_0| > 1e-30, else throws
// std::invalid_argument("non-invertible series").
PowerSeries series_inv(const PowerSeries& a);

// exp(a) for a series with a_0 == 0 exactly (throws otherwise), via the
// recurrence J*b_J = sum_{k=1..J} k*a_k*b_{J-k}, b_0 = 1. Cost O(N^2).
PowerSeries series_exp(const PowerSeries& a);

// Sparre Andersen survival generating function:
//   qtilde(z) = exp( sum_{n>=1} p(n)/n z^n ),
// where element i of `p` is p(i+1), each in [0,1] (throws otherwise).
// Returns q(0..N) with N = p.size() and q(0) = 1.
PowerSeries sparre_andersen_survival(std::span<const double> p);

// p(1..N) for the drifted Gaussian walk; element i is p_sign(i+1).
std::vector<double> gaussian_sign_probabilities(const analytic::DriftParams& params,
                                                analytic::Sign sign, std::size_t N);

// f(0) = 0, f(n) = q(n-1) - q(n). Requires q(0) == 1 (within 1e-12).
PowerSeries first_passage_from_survival(const PowerSeries& q);

// Incremental sweep over m: after construction current() is the m=1 series
// (qtilde itself); advance() multiplies by ftilde once, moving m -> m+1.
// Coefficient n of the m-th series is Pi(m,n).
class PiSweep {
  public:
    PiSweep(PowerSeries f_minus, PowerSeries q_minus);

    const PowerSeries& current() const { return current_; }
    std::size_t m() const { return m_; }
    void advance();

  private:
    PowerSeries f_;
    PowerSeries current_;
    std::size_t m_ = 1;
};

// ftilde^(m-1) * qtilde for a single m >= 1 (one PiSweep pass).
// Requires f_minus(0) == 0 and q_minus(0) == 1.
PowerSeries record_number_distribution(const PowerSeries& f_minus,
                                       const PowerSeries& q_minus, std::size_t m);

// mtilde(z) = 1 / ((1-z)^2 qtilde_minus(z)); coefficient n is the exact mean
// record number m_n(c) for the drift encoded in q_minus. Requires q_minus(0) == 1.
PowerSeries mean_record_series(const PowerSeries& q_minus);

// P_0 = 1, P_n = m_n - m_{n-1}.
PowerSeries record_rate_from_mean(const PowerSeries& m_series);

}  // namespace recwalk::series
