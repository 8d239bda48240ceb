#include "recwalk/records.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace recwalk {

RecordTally count_records(std::span<const double> series) {
    if (series.empty()) throw std::invalid_argument("empty series");

    RecordTally t;
    const std::size_t n = series.size();
    t.upper_counts.resize(n);
    t.lower_counts.resize(n);

    if (!std::isfinite(series[0]))
        throw std::invalid_argument("non-finite value at index 0");

    // Entry 0 opens both tallies.
    t.upper_times.push_back(0);
    t.lower_times.push_back(0);
    t.upper_counts[0] = 1;
    t.lower_counts[0] = 1;

    double run_max = series[0];
    double run_min = series[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double v = series[i];
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite value at index " + std::to_string(i));
        t.upper_counts[i] = t.upper_counts[i - 1];
        t.lower_counts[i] = t.lower_counts[i - 1];
        if (v > run_max) {  // strict: a tied maximum is not a record
            run_max = v;
            t.upper_times.push_back(i);
            ++t.upper_counts[i];
        }
        if (v < run_min) {
            run_min = v;
            t.lower_times.push_back(i);
            ++t.lower_counts[i];
        }
    }
    return t;
}

RateProfile record_rate_profile(std::span<const RecordTally> tallies, std::size_t n_max) {
    if (tallies.empty()) throw std::invalid_argument("record_rate_profile: no tallies");
    for (const RecordTally& t : tallies)
        if (t.length() < n_max + 1)
            throw std::invalid_argument("record_rate_profile: tally shorter than n_max");

    std::vector<std::size_t> up(n_max + 1, 0), lo(n_max + 1, 0);
    for (const RecordTally& t : tallies) {
        for (std::size_t s : t.upper_times) {
            if (s > n_max) break;
            ++up[s];
        }
        for (std::size_t s : t.lower_times) {
            if (s > n_max) break;
            ++lo[s];
        }
    }

    RateProfile r;
    r.upper.resize(n_max + 1);
    r.lower.resize(n_max + 1);
    const double inv = 1.0 / double(tallies.size());
    for (std::size_t nn = 0; nn <= n_max; ++nn) {
        r.upper[nn] = double(up[nn]) * inv;
        r.lower[nn] = double(lo[nn]) * inv;
    }
    return r;
}

}  // namespace recwalk
