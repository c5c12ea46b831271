// s2s.hpp
//
// Segmented sieve for integers representable as a^2 + b^2, and the
// short-interval scan: for a left endpoint X, the smallest m > X that is a sum
// of two squares and coprime to N, with the normalized gap (m - X) / X^{1/4}.

#pragma once

#include <cstdint>
#include <vector>

namespace cmgaps {

inline constexpr std::uint64_t default_segment_size = 1ull << 24;
inline constexpr std::uint64_t s2s_hi_budget = 1'000'000'000'000;  // a, b <= 10^6
inline constexpr std::uint64_t interval_scan_budget = 1'000'000'000;
inline constexpr std::uint64_t default_coprime_modulus = 192;  // 6 * 32

// One bit per integer in [lo, hi): set iff the integer is a sum of two squares.
class S2SBitmap {
public:
    S2SBitmap(std::uint64_t lo, std::uint64_t hi);

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    bool contains(std::uint64_t n) const { return n >= lo_ && n < hi_; }
    bool test(std::uint64_t n) const { return (words_[(n - lo_) >> 6] >> ((n - lo_) & 63)) & 1; }
    void set(std::uint64_t n) { words_[(n - lo_) >> 6] |= 1ull << ((n - lo_) & 63); }
    std::uint64_t count() const;

private:
    std::uint64_t lo_;
    std::uint64_t hi_;
    std::vector<std::uint64_t> words_;
};

// Marks a^2 + b^2 in [lo, hi) by a double loop over a <= b.
S2SBitmap sieve_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t max_segment = default_segment_size);

// Sieve [lo, hi) of any length by stitching segments together.
S2SBitmap sieve_range(std::uint64_t lo, std::uint64_t hi);

struct IntervalWitness {
    std::uint64_t X = 0;
    std::uint64_t m = 0;
    double ratio = 0.0;  // (m - X) / X^{1/4}
};

double interval_ratio(std::uint64_t X, std::uint64_t m);

// Smallest m > X that is a sum of two squares with gcd(m, N) = 1.
IntervalWitness next_admissible(std::uint64_t X, std::uint64_t N);

struct IntervalScan {
    std::uint64_t N = default_coprime_modulus;
    std::uint64_t X_lo = 0;
    std::uint64_t X_hi = 0;
    std::uint64_t stride = 1;
    std::uint64_t evaluated = 0;
    double c_emp = 0.0;
    std::uint64_t argmax_X = 0;
    std::uint64_t argmax_m = 0;
    // ratio histogram over evaluated X: bin k counts ratios in [k/4, (k+1)/4); last bin is open
    std::vector<std::uint64_t> histogram;
    // largest ratios, descending (ties by ascending X)
    std::vector<IntervalWitness> top;
};

inline constexpr std::size_t histogram_bins = 40;
inline constexpr double histogram_bin_width = 0.25;

// Max of next_admissible(X, N).ratio over X in [X_lo, X_hi).
//
// stride == 1 is exhaustive. Between consecutive admissible integers the ratio
// only decreases in X, so it is enough to evaluate X_lo and every admissible
// X in the range. stride > 1 samples X = X_lo + k * stride.
IntervalScan interval_constant_scan(std::uint64_t X_lo, std::uint64_t X_hi, std::uint64_t N,
                                    std::uint64_t stride = 1, std::size_t top_k = 10);

}  // namespace cmgaps
