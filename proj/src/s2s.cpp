#include "cmgaps/s2s.hpp"

#include "cmgaps/arith.hpp"
#include "cmgaps/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

namespace cmgaps {

S2SBitmap::S2SBitmap(std::uint64_t lo, std::uint64_t hi)
    : lo_(lo), hi_(std::max(lo, hi)), words_((hi_ - lo_ + 63) / 64, 0) {}

std::uint64_t S2SBitmap::count() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

namespace {

// Set the bits of every a^2 + b^2 (0 <= a <= b) in [lo, hi) on `bits`.
void mark_sums(S2SBitmap& bits, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t a = 0; 2 * a * a < hi; ++a) {
        const std::uint64_t a2 = a * a;
        std::uint64_t b = a;
        if (lo > a2) b = std::max(b, isqrt(lo - a2 - 1) + 1);
        for (std::uint64_t n = a2 + b * b; n < hi; n = a2 + b * b) {
            bits.set(n);
            ++b;
        }
    }
}

// Admissible integers (sum of two squares, coprime to N) in increasing order.
class AdmissibleStream {
public:
    AdmissibleStream(std::uint64_t after, std::uint64_t N, std::uint64_t window_size = 1 << 20)
        : N_(N), window_size_(window_size), cursor_(after + 1), window_(0, 0) {}

    std::uint64_t next() {
        for (;;) {
            if (!window_.contains(cursor_)) {
                window_ = sieve_segment(cursor_, cursor_ + window_size_);
            }
            const std::uint64_t n = cursor_++;
            if (window_.test(n) && std::gcd(n, N_) == 1) return n;
        }
    }

private:
    std::uint64_t N_;
    std::uint64_t window_size_;
    std::uint64_t cursor_;
    S2SBitmap window_;
};

bool is_sum_of_two_squares_direct(std::uint64_t n) {
    for (std::uint64_t a = 0; 2 * a * a <= n; ++a) {
        const std::uint64_t r = n - a * a;
        const std::uint64_t b = isqrt(r);
        if (b * b == r) return true;
    }
    return false;
}

struct ScanPart {
    std::uint64_t evaluated = 0;
    std::vector<std::uint64_t> histogram = std::vector<std::uint64_t>(histogram_bins, 0);
    std::vector<IntervalWitness> top;
};

bool ranks_before(const IntervalWitness& a, const IntervalWitness& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.X < b.X;
}

void offer(std::vector<IntervalWitness>& top, std::size_t k, const IntervalWitness& w) {
    if (k == 0) return;
    if (top.size() == k && !ranks_before(w, top.back())) return;
    top.insert(std::upper_bound(top.begin(), top.end(), w, ranks_before), w);
    if (top.size() > k) top.pop_back();
}

void record(ScanPart& part, std::size_t k, std::uint64_t X, std::uint64_t m) {
    IntervalWitness w{X, m, interval_ratio(X, m)};
    ++part.evaluated;
    auto bin = static_cast<std::size_t>(w.ratio / histogram_bin_width);
    part.histogram[std::min(bin, histogram_bins - 1)]++;
    // keep at least one candidate so the argmax survives a top_k of 0
    offer(part.top, std::max<std::size_t>(k, 1), w);
}

constexpr std::uint64_t scan_chunk = 1 << 22;

}  // namespace

S2SBitmap sieve_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t max_segment) {
    if (hi < lo) throw contract_error("sieve_segment: hi < lo");
    if (hi - lo > max_segment) throw budget_error("sieve_segment: segment longer than the configured size");
    if (hi > s2s_hi_budget) throw budget_error("sieve_segment: hi exceeds 10^12");
    S2SBitmap bits(lo, hi);
    mark_sums(bits, lo, hi);
    return bits;
}

S2SBitmap sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi < lo) throw contract_error("sieve_range: hi < lo");
    if (hi > s2s_hi_budget) throw budget_error("sieve_range: hi exceeds 10^12");
    S2SBitmap bits(lo, hi);
    for (std::uint64_t s = lo; s < hi; s += default_segment_size) {
        mark_sums(bits, s, std::min(hi, s + default_segment_size));
    }
    return bits;
}

double interval_ratio(std::uint64_t X, std::uint64_t m) {
    // sqrt is correctly rounded, so this is reproducible bit for bit
    return static_cast<double>(m - X) / std::sqrt(std::sqrt(static_cast<double>(X)));
}

IntervalWitness next_admissible(std::uint64_t X, std::uint64_t N) {
    if (X < 1) throw contract_error("next_admissible: X must be >= 1");
    if (N < 1) throw contract_error("next_admissible: N must be >= 1");
    AdmissibleStream stream(X, N, 1 << 12);
    const std::uint64_t m = stream.next();
    if (m <= X || std::gcd(m, N) != 1 || !is_sum_of_two_squares_direct(m))
        throw contract_error("next_admissible: witness failed re-verification");
    return {X, m, interval_ratio(X, m)};
}

IntervalScan interval_constant_scan(std::uint64_t X_lo, std::uint64_t X_hi, std::uint64_t N,
                                    std::uint64_t stride, std::size_t top_k) {
    if (N < 1) throw contract_error("interval_constant_scan: N must be >= 1");
    if (stride < 1) throw contract_error("interval_constant_scan: stride must be >= 1");
    if (X_hi > interval_scan_budget) throw budget_error("interval_constant_scan: X_hi exceeds 10^9");

    IntervalScan scan;
    scan.N = N;
    scan.X_lo = X_lo;
    scan.X_hi = X_hi;
    scan.stride = stride;
    scan.histogram.assign(histogram_bins, 0);
    if (X_lo >= X_hi) return scan;
    if (X_lo < 1) throw contract_error("interval_constant_scan: X_lo must be >= 1");

    const std::uint64_t span = X_hi - X_lo;
    // exhaustive mode chunks the X range; sampled mode chunks the sample index
    const std::uint64_t units = stride == 1 ? span : (span + stride - 1) / stride;
    const std::uint64_t per_chunk = stride == 1 ? scan_chunk : std::max<std::uint64_t>(1, scan_chunk / stride);
    const std::size_t n_chunks = (units + per_chunk - 1) / per_chunk;
    std::vector<ScanPart> parts(n_chunks);

    parallel_chunks(n_chunks, thread_count(), [&](std::size_t c) {
        ScanPart& part = parts[c];
        const std::uint64_t u_lo = c * per_chunk;
        const std::uint64_t u_hi = std::min(units, u_lo + per_chunk);
        if (stride == 1) {
            const std::uint64_t lo = X_lo + u_lo;
            const std::uint64_t hi = X_lo + u_hi;
            // X_lo is always evaluated; inside the range only admissible X are
            std::optional<std::uint64_t> prev;
            if (lo == X_lo) prev = X_lo;
            AdmissibleStream stream(lo - 1, N);
            for (;;) {
                const std::uint64_t m = stream.next();
                if (prev && m > *prev) record(part, top_k, *prev, m);
                if (m >= hi) break;
                prev = m;
            }
        } else {
            const std::uint64_t first = X_lo + u_lo * stride;
            AdmissibleStream stream(first, N);
            std::uint64_t m = stream.next();
            for (std::uint64_t u = u_lo; u < u_hi; ++u) {
                const std::uint64_t X = X_lo + u * stride;
                while (m <= X) m = stream.next();
                record(part, top_k, X, m);
            }
        }
    });

    std::vector<IntervalWitness> top;
    for (const auto& part : parts) {
        scan.evaluated += part.evaluated;
        for (std::size_t b = 0; b < histogram_bins; ++b) scan.histogram[b] += part.histogram[b];
        for (const auto& w : part.top) offer(top, std::max<std::size_t>(top_k, 1), w);
    }
    if (!top.empty()) {
        scan.c_emp = top.front().ratio;
        scan.argmax_X = top.front().X;
        scan.argmax_m = top.front().m;
    }
    if (top.size() > top_k) top.resize(top_k);
    scan.top = std::move(top);
    return scan;
}

}  // namespace cmgaps
