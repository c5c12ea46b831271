#include "cmgaps/gaps.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace cmgaps;

namespace {

const CoeffSeries& series_m1(std::uint64_t limit) {
    static std::map<std::uint64_t, CoeffSeries> cache;
    auto it = cache.find(limit);
    if (it == cache.end())
        it = cache.emplace(limit, batch_series(limit, FormSpec::canonical(1), Strategy::recurrence)).first;
    return it->second;
}

// i_f(n) by walking forward from n; -1 when a(n) != 0.
std::int64_t gap_brute(const CoeffSeries& s, std::uint64_t n) {
    if (s[n] != 0) return -1;
    std::int64_t i = 0;
    while (n + i + 1 <= s.limit && s[n + i + 1] == 0) ++i;
    return i;
}

}  // namespace

TEST_CASE("gap_at examples") {
    const auto& s = series_m1(100);
    CHECK(gap_at(s, 5).value == -1);
    CHECK(gap_at(s, 6).value == 2);
    CHECK(gap_at(s, 2).value == 2);
    CHECK(gap_at(s, 7).value == 1);
    CHECK_FALSE(gap_at(s, 6).truncated);
    CHECK(gap_at(s, 98).truncated);
    CHECK(gap_at(s, 98).value == 2);
    CHECK_THROWS_AS(gap_at(s, 0), contract_error);
    CHECK_THROWS_AS(gap_at(s, 101), contract_error);
}

TEST_CASE("max_gap_scan on X = 10") {
    const auto s = batch_series(10, FormSpec::canonical(1), Strategy::recurrence);
    const auto scan = max_gap_scan(s, 1);
    CHECK(scan.records == std::vector<GapRecord>{{2, 2, gap_ratio(2, 2)}, {6, 2, gap_ratio(6, 2)}});
    REQUIRE(scan.truncated_tail.has_value());
    CHECK(scan.truncated_tail->start == 10);
    CHECK(scan.truncated_tail->length == 0);
}

TEST_CASE("max_gap_scan to 100 matches the hand enumeration") {
    // start, i_f(start): frozen from tests/oracles/anchors.py
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected = {
        {2, 2},  {6, 2},  {10, 2}, {14, 2}, {18, 6}, {26, 2}, {30, 6}, {38, 2}, {42, 2},
        {46, 2}, {50, 2}, {54, 6}, {62, 2}, {66, 6}, {74, 6}, {82, 2}, {86, 2}, {90, 6}};
    const auto scan = max_gap_scan(series_m1(100), 1);
    REQUIRE(scan.records.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(scan.records[i].start == expected[i].first);
        CHECK(scan.records[i].length == expected[i].second);
    }
    REQUIRE(scan.truncated_tail);
    CHECK(scan.truncated_tail->start == 98);
}

TEST_CASE("max_gap_scan consistency with brute force to 10^5") {
    const auto& s = series_m1(100'000);
    const auto scan = max_gap_scan(s, 1);

    // records are maximal runs with nonzero boundaries
    for (const auto& r : scan.records) {
        REQUIRE(r.start >= 2);
        CHECK(s[r.start - 1] != 0);
        CHECK(s[r.start + r.length + 1] != 0);
        for (std::uint64_t n = r.start; n <= r.start + r.length; ++n) REQUIRE(s[n] == 0);
    }

    // gap_at == remaining run length inside runs, -1 at nonzero coefficients
    std::int64_t brute_max = -1;
    for (std::uint64_t n = 1; n <= s.limit; ++n) {
        const auto g = gap_at(s, n);
        REQUIRE(g.value == gap_brute(s, n));
        if (!g.truncated) brute_max = std::max(brute_max, g.value);
    }
    CHECK(static_cast<std::int64_t>(scan.max_length) == brute_max);

    // bookkeeping: sum(length + 1) + #nonzero = limit
    std::uint64_t total = scan.nonzero_count;
    for (const auto& r : scan.records) total += r.length + 1;
    if (scan.truncated_tail) total += scan.truncated_tail->length + 1;
    CHECK(total == s.limit);
}

TEST_CASE("max_gap_scan respects n0 and records the 10^4 anchors") {
    const auto& s = series_m1(10'000);
    const auto all = max_gap_scan(s, 1);
    CHECK(all.records.size() == 1'305);
    CHECK(all.max_length == 30);
    const auto late = max_gap_scan(s, 100);
    CHECK(late.max_ratio == doctest::Approx(30.0 / std::pow(3930.0, 0.25)).epsilon(1e-14));
    CHECK(late.argmax_start == 3'930);
    CHECK(late.records.size() == all.records.size());
}

TEST_CASE("bound_check") {
    const auto& s = series_m1(100'000);
    CHECK(bound_check(s, 1e6, 1).ok());
    const auto scan = max_gap_scan(s, 100);
    const auto tight = bound_check(scan, scan.max_ratio * 0.999, 100);
    REQUIRE_FALSE(tight.ok());
    CHECK(tight.violations.front().start == scan.argmax_start);
    CHECK(bound_check(scan, scan.max_ratio, 100).ok());
    CHECK_THROWS_AS(bound_check(scan, 0.0, 100), contract_error);
    CHECK_THROWS_AS(bound_check(scan, 1.0, 0), contract_error);
}

TEST_CASE("calibrate then validate on the weight-4 series") {
    const auto s = batch_series(1'000'000, FormSpec::canonical(3), Strategy::recurrence);
    const auto scan = max_gap_scan(s, 100);
    const double C = max_ratio_between(scan, 100, 100'000);
    CHECK(C == doctest::Approx(3.7889870166722224).epsilon(1e-14));
    const auto report = bound_check(scan, 2 * C, 100'001);
    CHECK(report.ok());
    CHECK(report.checked > 0);
}

TEST_CASE("gap_s2s_consistency and support equivalence") {
    const auto& s = series_m1(100'000);
    const auto bits = sieve_range(0, 100'001);
    const auto r = gap_s2s_consistency(s, bits);
    CHECK(r.ok());
    CHECK(r.checked > 0);
    CHECK(support_equivalence(s, bits).ok());
    CHECK(s[45] == 6);
    CHECK(s[65] == -12);
    CHECK(s[9] == -3);

    auto broken = s;
    broken.values[65] = 0;
    const auto rb = gap_s2s_consistency(broken, bits);
    REQUIRE(rb.violations.size() == 1);
    CHECK(rb.violations[0] == 65);
}
