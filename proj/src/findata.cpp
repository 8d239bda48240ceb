#include "recwalk/findata.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "recwalk/records.hpp"
#include "recwalk/rng.hpp"

namespace recwalk::findata {

namespace {

// ---------------- civil-date helpers (proleptic Gregorian) ----------------
// Days since 1970-01-01; Howard Hinnant's branchless civil-date algorithms.

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + std::int64_t(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = std::int64_t(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

// 0 = Sunday ... 6 = Saturday (valid for z >= 0, well inside our range).
unsigned weekday(std::int64_t z) { return static_cast<unsigned>((z + 4) % 7); }

std::string format_date(std::int64_t z) {
    int y;
    unsigned m, d;
    civil_from_days(z, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

// ---------------- CSV helpers ----------------

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

bool valid_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const int month = (s[5] - '0') * 10 + (s[6] - '0');
    const int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
    throw std::runtime_error("malformed row at line " + std::to_string(line_no) + ": " + why);
}

double centered_index_sum_sq(std::size_t n) {
    // sum over i=0..n-1 of (i - (n-1)/2)^2 = n(n^2-1)/12
    const double dn = double(n);
    return dn * (dn * dn - 1.0) / 12.0;
}

}  // namespace

std::vector<PriceSeries> load_prices(std::istream& in, const LoadOptions& opt,
                                     std::vector<std::string>* warnings) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty input: missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    int date_col = -1, ticker_col = -1, close_col = -1;
    {
        const auto header = split_csv(line);
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string name = lower(header[i]);
            if (name == "date") date_col = int(i);
            else if (name == "ticker") ticker_col = int(i);
            else if (name == "close") close_col = int(i);
        }
        if (date_col < 0 || ticker_col < 0 || close_col < 0)
            throw std::runtime_error(
                "CSV header must contain columns date, ticker, close");
    }
    const std::size_t need =
        std::size_t(std::max({date_col, ticker_col, close_col})) + 1;

    struct Row {
        std::string date;
        double close;
    };
    std::map<std::string, std::vector<Row>> by_ticker;  // alphabetical by key

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() < need)
            malformed(line_no, "expected at least " + std::to_string(need) + " fields");

        const std::string& date = fields[std::size_t(date_col)];
        const std::string& ticker = fields[std::size_t(ticker_col)];
        const std::string& close_text = fields[std::size_t(close_col)];
        if (!valid_iso_date(date)) malformed(line_no, "bad date '" + date + "'");
        if (ticker.empty()) malformed(line_no, "empty ticker");

        char* end = nullptr;
        const double close = std::strtod(close_text.c_str(), &end);
        if (end == close_text.c_str() || *end != '\0' || !std::isfinite(close))
            malformed(line_no, "bad close '" + close_text + "'");
        if (close <= 0.0)
            throw std::runtime_error("non-positive price for ticker " + ticker +
                                     " on " + date);
        by_ticker[ticker].push_back({date, close});
    }

    std::vector<PriceSeries> out;
    const std::size_t min_rows = std::max<std::size_t>(opt.min_rows, 2);
    for (auto& [ticker, rows] : by_ticker) {
        std::sort(rows.begin(), rows.end(),
                  [](const Row& a, const Row& b) { return a.date < b.date; });
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (rows[i].date == rows[i - 1].date)
                throw std::runtime_error("duplicate (ticker, date): " + ticker + ", " +
                                         rows[i].date);
        if (rows.size() < min_rows) {
            if (warnings)
                warnings->push_back("dropped ticker " + ticker + ": " +
                                    std::to_string(rows.size()) + " rows < minimum " +
                                    std::to_string(min_rows));
            continue;
        }
        PriceSeries s;
        s.ticker = ticker;
        s.dates.reserve(rows.size());
        s.closes.reserve(rows.size());
        for (auto& r : rows) {
            s.dates.push_back(std::move(r.date));
            s.closes.push_back(r.close);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<PriceSeries> load_prices_file(const std::string& path, const LoadOptions& opt,
                                          std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return load_prices(in, opt, warnings);
}

std::vector<double> log_transform(const PriceSeries& p) {
    std::vector<double> out;
    out.reserve(p.closes.size());
    for (const double v : p.closes) out.push_back(std::log(v));
    return out;
}

DetrendFit fit_linear_trend(std::span<const double> logp, SigmaMode mode) {
    const std::size_t n = logp.size();
    if (n < 3) throw std::invalid_argument("fit_linear_trend: need at least 3 points");

    const double xbar = double(n - 1) / 2.0;
    double ybar = 0.0;
    for (const double y : logp) ybar += y;
    ybar /= double(n);

    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += (double(i) - xbar) * (logp[i] - ybar);
    const double slope = sxy / centered_index_sum_sq(n);
    const double intercept = ybar - slope * xbar;

    DetrendFit fit;
    fit.c_hat = slope;
    fit.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        fit.residuals[i] = logp[i] - (intercept + slope * double(i));

    const std::vector<double>* diff_source = &fit.residuals;
    std::vector<double> raw_copy;
    if (mode == SigmaMode::raw) {
        raw_copy.assign(logp.begin(), logp.end());
        diff_source = &raw_copy;
    }
    const std::size_t m = n - 1;  // number of increments
    double dbar = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        dbar += (*diff_source)[i + 1] - (*diff_source)[i];
    dbar /= double(m);
    double ssd = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double d = (*diff_source)[i + 1] - (*diff_source)[i] - dbar;
        ssd += d * d;
    }
    fit.sigma_hat = m > 1 ? std::sqrt(ssd / double(m - 1)) : 0.0;
    fit.degenerate = !(fit.sigma_hat > 0.0);
    return fit;
}

namespace {

// Shared tally accumulation: adds each series' cumulative record counts
// (steps 0..horizon) into integer sums, then divides once.
struct CountAccumulator {
    std::vector<std::uint64_t> upper, lower;
    std::size_t n_series = 0;

    void init(std::size_t horizon) {
        upper.assign(horizon + 1, 0);
        lower.assign(horizon + 1, 0);
    }
    void add(const RecordTally& t) {
        for (std::size_t k = 0; k < upper.size(); ++k) {
            upper[k] += t.upper_counts[k];
            lower[k] += t.lower_counts[k];
        }
        ++n_series;
    }
    EnsembleRecordReport report() const {
        EnsembleRecordReport r;
        r.n_series = n_series;
        r.horizon = upper.size() - 1;
        r.upper_mean.resize(upper.size());
        r.lower_mean.resize(lower.size());
        for (std::size_t k = 0; k < upper.size(); ++k) {
            r.upper_mean[k] = double(upper[k]) / double(n_series);
            r.lower_mean[k] = double(lower[k]) / double(n_series);
        }
        return r;
    }
};

}  // namespace

RawDetrendedReports detrended_record_counts(std::span<const PriceSeries> series) {
    if (series.empty())
        throw std::invalid_argument("detrended_record_counts: no series");
    std::size_t min_len = series[0].closes.size();
    for (const auto& s : series) min_len = std::min(min_len, s.closes.size());

    CountAccumulator raw_acc, det_acc;
    raw_acc.init(min_len - 1);
    det_acc.init(min_len - 1);
    for (const auto& s : series) {
        const auto logp = log_transform(s);
        const auto fit = fit_linear_trend(logp);
        raw_acc.add(count_records(logp));
        det_acc.add(count_records(fit.residuals));
    }
    RawDetrendedReports out;
    out.raw = raw_acc.report();
    out.detrended = det_acc.report();
    return out;
}

double normalized_drift_average(std::span<const DetrendFit> fits) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : fits)
        if (!f.degenerate) {
            sum += f.c_hat / f.sigma_hat;
            ++n;
        }
    if (n == 0)
        throw std::runtime_error("normalized_drift_average: every fit is degenerate");
    return sum / double(n);
}

EnsembleRecordReport windowed_analysis(std::span<const PriceSeries> series,
                                       std::size_t window_len) {
    if (window_len < 3)
        throw std::invalid_argument("windowed_analysis: window_len must be >= 3");
    if (series.empty())
        throw std::invalid_argument("windowed_analysis: no series");
    for (const auto& s : series)
        if (s.closes.size() < window_len)
            throw std::runtime_error("windowed_analysis: window_len " +
                                     std::to_string(window_len) + " exceeds length of " +
                                     s.ticker);

    CountAccumulator acc;
    acc.init(window_len - 1);
    for (const auto& s : series) {
        const auto logp = log_transform(s);
        const std::size_t n_windows = logp.size() / window_len;
        for (std::size_t w = 0; w < n_windows; ++w) {
            const std::span<const double> window(logp.data() + w * window_len,
                                                 window_len);
            const auto fit = fit_linear_trend(window);
            acc.add(count_records(fit.residuals));
        }
    }
    return acc.report();
}

std::vector<PriceSeries> synthetic_ensemble(const SyntheticSpec& spec,
                                            std::vector<SyntheticTicker>* out_truth) {
    if (spec.n_tickers < 1)
        throw std::invalid_argument("synthetic_ensemble: n_tickers must be >= 1");
    if (spec.n_steps < 1)
        throw std::invalid_argument("synthetic_ensemble: n_steps must be >= 1");
    if (!std::isfinite(spec.mean_c_over_sigma))
        throw std::invalid_argument("synthetic_ensemble: mean_c_over_sigma not finite");

    // Shared weekday calendar: trading days from 1990-01-02 onward.
    std::vector<std::string> dates;
    dates.reserve(spec.n_steps + 1);
    std::int64_t z = days_from_civil(1990, 1, 2);
    for (std::size_t t = 0; t <= spec.n_steps; ++t) {
        dates.push_back(format_date(z));
        do {
            ++z;
        } while (weekday(z) == 0 || weekday(z) == 6);
    }

    int width = 3;
    for (std::size_t v = spec.n_tickers; v >= 1000; v /= 10) ++width;

    const double kS0 = 100.0;
    std::vector<PriceSeries> out;
    out.reserve(spec.n_tickers);
    if (out_truth) out_truth->clear();

    for (std::size_t i = 0; i < spec.n_tickers; ++i) {
        // Three independent streams per ticker: walk jumps, drift-ratio draw,
        // jump-scale draw. Keys never depend on loop scheduling.
        rng::NormalSampler walk(spec.seed, 3 * i);
        rng::NormalSampler ratio_draw(spec.seed, 3 * i + 1);
        rng::Stream scale_draw(spec.seed, 3 * i + 2);

        const double ratio =
            spec.mean_c_over_sigma + (spec.mean_c_over_sigma / 4.0) * ratio_draw.next();
        const double sigma = 0.01 + 0.02 * scale_draw.next_unit();
        const double c = ratio * sigma;

        char name[32];
        std::snprintf(name, sizeof name, "SYN%0*zu", width, i + 1);

        PriceSeries s;
        s.ticker = name;
        s.dates = dates;
        s.closes.resize(spec.n_steps + 1);
        double x = 0.0;
        s.closes[0] = kS0;
        for (std::size_t t = 1; t <= spec.n_steps; ++t) {
            x += c + sigma * walk.next();
            s.closes[t] = kS0 * std::exp(x);
        }
        out.push_back(std::move(s));
        if (out_truth) out_truth->push_back({name, c, sigma});
    }
    return out;
}

}  // namespace recwalk::findata
