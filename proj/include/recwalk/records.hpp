#pragma once
// records.hpp -- upper/lower record detection for real-valued sequences.
//
// Record semantics: entry 0 is both an upper and a lower record by convention;
// entry n > 0 is an upper (lower) record iff it is strictly greater (smaller)
// than every earlier entry. Ties are never records, so quantized data cannot
// double-count a repeated extremum.

#include <cstddef>
#include <span>
#include <vector>

namespace recwalk {

struct RecordTally {
    std::vector<std::size_t> upper_times;   // step indices of upper records, ascending
    std::vector<std::size_t> lower_times;   // step indices of lower records, ascending
    std::vector<std::size_t> upper_counts;  // cumulative upper-record count per step, starts at 1
    std::vector<std::size_t> lower_counts;  // cumulative lower-record count per step, starts at 1

    std::size_t length() const { return upper_counts.size(); }
};

// Scans the sequence once and returns the full tally.
// Throws std::invalid_argument on an empty series or any non-finite value
// (the message names the offending index).
RecordTally count_records(std::span<const double> series);

struct RateProfile {
    std::vector<double> upper;  // fraction of tallies with an upper record at step n
    std::vector<double> lower;  // same for lower records
};

// Per-step record frequency across an ensemble of tallies, for steps 0..n_max.
// Every tally must cover at least n_max + 1 steps; entry 0 is 1 by convention.
RateProfile record_rate_profile(std::span<const RecordTally> tallies, std::size_t n_max);

}  // namespace recwalk
