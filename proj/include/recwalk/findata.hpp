#pragma once
// findata.hpp -- financial record-statistics pipeline: ingest daily closing
// prices, log-transform, fit/remove per-ticker linear trends, estimate the
// per-ticker drift and jump scale, and count upper/lower records raw,
// detrended, and in detrended subsequence windows.
//
// Step indices are trading-day indices; calendar gaps are ignored.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace recwalk::findata {

struct PriceSeries {
    std::string ticker;
    std::vector<std::string> dates;   // ISO-8601 YYYY-MM-DD, strictly increasing
    std::vector<double> closes;       // > 0, same length as dates
};

struct LoadOptions {
    // Tickers with fewer rows are dropped with a warning; 2 is the hard floor
    // (a price series needs two points). Trend fitting needs at least 3 rows,
    // so analysis front ends typically raise this to 3.
    std::size_t min_rows = 2;
};

// CSV loader. Header row required with columns `date`, `ticker`, `close` (any
// order, extra columns ignored); rows in any order, sorted per ticker by date;
// tickers returned in alphabetical order. Throws std::runtime_error on a
// malformed row (message carries the line number), a non-positive price
// (ticker and date), or a duplicate (ticker, date) pair. Dropped-ticker
// warnings are appended to *warnings when given.
std::vector<PriceSeries> load_prices(std::istream& in, const LoadOptions& opt = {},
                                     std::vector<std::string>* warnings = nullptr);
std::vector<PriceSeries> load_prices_file(const std::string& path,
                                          const LoadOptions& opt = {},
                                          std::vector<std::string>* warnings = nullptr);

// Natural log of the closes.
std::vector<double> log_transform(const PriceSeries& p);

enum class SigmaMode {
    detrended,  // sigma_hat from first differences of the OLS residuals (default)
    raw         // sigma_hat from first differences of the raw log prices
};

struct DetrendFit {
    double c_hat = 0.0;      // OLS slope of log price vs trading-day index, per day
    double sigma_hat = 0.0;  // sample std dev (n-1 denominator) of daily increments
    std::vector<double> residuals;  // logp - (intercept + slope * index)
    bool degenerate = false;        // sigma_hat == 0 (constant or exactly linear input)
};

// Ordinary least squares of logp against index 0..n-1; requires length >= 3.
DetrendFit fit_linear_trend(std::span<const double> logp,
                            SigmaMode mode = SigmaMode::detrended);

struct EnsembleRecordReport {
    std::vector<double> upper_mean;  // mean cumulative upper-record count per step
    std::vector<double> lower_mean;
    std::size_t n_series = 0;        // tallies averaged (tickers, or ticker-windows)
    std::size_t horizon = 0;         // last step index covered
};

struct RawDetrendedReports {
    EnsembleRecordReport raw;
    EnsembleRecordReport detrended;
};

// Per-ticker record tallies on the raw log series and on the OLS residuals,
// averaged across tickers per step. The horizon is the shortest series length
// minus one, so every ticker contributes at every reported step.
RawDetrendedReports detrended_record_counts(std::span<const PriceSeries> series);

// Mean of c_hat / sigma_hat over non-degenerate fits; throws std::runtime_error
// if every fit is degenerate.
double normalized_drift_average(std::span<const DetrendFit> fits);

// Splits each log series into floor(n/window_len) disjoint consecutive windows
// (remainder tail discarded), detrends each window independently, counts
// records within each window (window start = step 0, a record), and averages
// over all windows of all tickers. Requires window_len >= 3 and every series
// at least window_len long.
EnsembleRecordReport windowed_analysis(std::span<const PriceSeries> series,
                                       std::size_t window_len);

// ---------------- synthetic fixture ----------------
// Geometric Gaussian walks S_t = S_0 exp(X_t) on a synthetic weekday calendar
// (from 1990-01-02). Per ticker: drift ratio r_i ~ Normal(mean_c_over_sigma,
// (mean_c_over_sigma/4)^2), sigma_i ~ Uniform[0.01, 0.03], c_i = r_i*sigma_i.
// n_steps = number of increments, so each series has n_steps + 1 rows.
// Deterministic in the seed via the counter-based stream family.

struct SyntheticSpec {
    std::size_t n_tickers = 366;
    std::size_t n_steps = 5000;
    double mean_c_over_sigma = 0.025;
    std::uint64_t seed = 42;
};

struct SyntheticTicker {
    std::string ticker;
    double c = 0.0;      // true per-step log drift used by the generator
    double sigma = 0.0;  // true per-step jump scale
};

std::vector<PriceSeries> synthetic_ensemble(const SyntheticSpec& spec,
                                            std::vector<SyntheticTicker>* out_truth = nullptr);

}  // namespace recwalk::findata
