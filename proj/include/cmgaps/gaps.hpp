// gaps.hpp
//
// The gap function i_f(n) = max { i : a(n+j) = 0 for all 0 <= j <= i } and
// scans for maximal zero-runs in a coefficient series.
//
// A run starting at `start` with i_f(start) = length covers the indices
// start .. start+length, so it holds length+1 zeros.

#pragma once

#include "cmgaps/coeffs.hpp"
#include "cmgaps/s2s.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cmgaps {

struct GapRecord {
    std::uint64_t start = 0;
    std::uint64_t length = 0;  // i_f(start)
    double ratio = 0.0;        // length / start^{1/4}

    friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

double gap_ratio(std::uint64_t start, std::uint64_t length);

struct GapValue {
    // -1 when a(n) != 0 (no run starts at n), else i_f(n)
    std::int64_t value = -1;
    // the run reached series.limit; its true length is unknown
    bool truncated = false;
};

GapValue gap_at(const CoeffSeries& series, std::uint64_t n);

inline constexpr std::uint64_t default_n0 = 100;

struct GapScan {
    std::uint64_t limit = 0;
    std::uint64_t n0 = default_n0;
    // every maximal run, ascending by start, trailing truncated run excluded
    std::vector<GapRecord> records;
    std::optional<GapRecord> truncated_tail;
    std::uint64_t nonzero_count = 0;
    // over complete runs with start >= n0
    std::uint64_t max_length = 0;
    double max_ratio = 0.0;
    std::uint64_t argmax_start = 0;
};

GapScan max_gap_scan(const CoeffSeries& series, std::uint64_t n0 = default_n0);

// Largest ratio among runs with lo <= start <= hi (0 if there are none).
double max_ratio_between(const GapScan& scan, std::uint64_t lo, std::uint64_t hi);

struct BoundReport {
    double C = 0.0;
    std::uint64_t n0 = 0;
    std::uint64_t start_max = 0;
    std::uint64_t checked = 0;
    std::vector<GapRecord> violations;

    bool ok() const { return violations.empty(); }
};

// length <= C * start^{1/4} for every complete run with n0 <= start <= start_max.
BoundReport bound_check(const GapScan& scan, double C, std::uint64_t n0,
                        std::uint64_t start_max = UINT64_MAX);
BoundReport bound_check(const CoeffSeries& series, double C, std::uint64_t n0);

struct ConsistencyReport {
    std::uint64_t N = default_coprime_modulus;
    std::uint64_t checked = 0;
    std::vector<std::uint64_t> violations;

    bool ok() const { return violations.empty(); }
};

// Every odd sum of two squares coprime to N has a nonzero coefficient, i.e.
// no zero-run swallows one. Covers n in [1, limit] within the bitmap.
ConsistencyReport gap_s2s_consistency(const CoeffSeries& series, const S2SBitmap& bitmap,
                                      std::uint64_t N = default_coprime_modulus);

// For odd n: bitmap bit(n) == (a(n) != 0). Stronger than the check above.
ConsistencyReport support_equivalence(const CoeffSeries& series, const S2SBitmap& bitmap);

}  // namespace cmgaps
