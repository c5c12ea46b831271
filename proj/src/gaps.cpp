#include "cmgaps/gaps.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace cmgaps {

double gap_ratio(std::uint64_t start, std::uint64_t length) {
    return static_cast<double>(length) / std::sqrt(std::sqrt(static_cast<double>(start)));
}

GapValue gap_at(const CoeffSeries& series, std::uint64_t n) {
    if (n < 1 || n > series.limit)
        throw contract_error("gap_at: n = " + std::to_string(n) + " outside the series");
    if (series[n] != 0) return {};
    std::uint64_t end = n;
    while (end + 1 <= series.limit && series[end + 1] == 0) ++end;
    return {static_cast<std::int64_t>(end - n), end == series.limit};
}

GapScan max_gap_scan(const CoeffSeries& series, std::uint64_t n0) {
    GapScan scan;
    scan.limit = series.limit;
    scan.n0 = n0;
    std::uint64_t run_start = 0;  // 0: not inside a run
    for (std::uint64_t n = 1; n <= series.limit; ++n) {
        if (series[n] == 0) {
            if (run_start == 0) run_start = n;
            continue;
        }
        ++scan.nonzero_count;
        if (run_start != 0) {
            const std::uint64_t length = n - 1 - run_start;
            scan.records.push_back({run_start, length, gap_ratio(run_start, length)});
            run_start = 0;
        }
    }
    if (run_start != 0) {
        const std::uint64_t length = series.limit - run_start;
        scan.truncated_tail = GapRecord{run_start, length, gap_ratio(run_start, length)};
    }
    for (const auto& r : scan.records) {
        if (r.start < n0) continue;
        scan.max_length = std::max(scan.max_length, r.length);
        if (r.ratio > scan.max_ratio) {
            scan.max_ratio = r.ratio;
            scan.argmax_start = r.start;
        }
    }
    return scan;
}

double max_ratio_between(const GapScan& scan, std::uint64_t lo, std::uint64_t hi) {
    double best = 0.0;
    for (const auto& r : scan.records) {
        if (r.start >= lo && r.start <= hi) best = std::max(best, r.ratio);
    }
    return best;
}

BoundReport bound_check(const GapScan& scan, double C, std::uint64_t n0, std::uint64_t start_max) {
    if (!(C > 0.0)) throw contract_error("bound_check: C must be positive");
    if (n0 < 1) throw contract_error("bound_check: n0 must be >= 1");
    BoundReport report;
    report.C = C;
    report.n0 = n0;
    report.start_max = start_max;
    for (const auto& r : scan.records) {
        if (r.start < n0 || r.start > start_max) continue;
        ++report.checked;
        if (static_cast<double>(r.length) > C * std::sqrt(std::sqrt(static_cast<double>(r.start))))
            report.violations.push_back(r);
    }
    return report;
}

BoundReport bound_check(const CoeffSeries& series, double C, std::uint64_t n0) {
    return bound_check(max_gap_scan(series, n0), C, n0);
}

ConsistencyReport gap_s2s_consistency(const CoeffSeries& series, const S2SBitmap& bitmap, std::uint64_t N) {
    ConsistencyReport report;
    report.N = N;
    for (std::uint64_t n = 1; n <= series.limit; ++n) {
        if (!bitmap.contains(n)) continue;
        if (n % 2 == 0 || !bitmap.test(n) || std::gcd(n, N) != 1) continue;
        ++report.checked;
        if (series[n] == 0) report.violations.push_back(n);
    }
    return report;
}

ConsistencyReport support_equivalence(const CoeffSeries& series, const S2SBitmap& bitmap) {
    ConsistencyReport report;
    report.N = 1;
    for (std::uint64_t n = 1; n <= series.limit; n += 2) {
        if (!bitmap.contains(n)) continue;
        ++report.checked;
        if (bitmap.test(n) != (series[n] != 0)) report.violations.push_back(n);
    }
    return report;
}

}  // namespace cmgaps
