// primes.hpp - prime lists and a smallest-prime-factor table.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cmgaps {

// All primes p <= limit, ascending (Eratosthenes over odd numbers).
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// spf[n] = smallest prime factor of n, for 2 <= n <= limit.
class SpfTable {
public:
    explicit SpfTable(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

    // (prime, exponent) pairs of n, ascending by prime. n in [1, limit].
    std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint32_t n) const;

private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

}  // namespace cmgaps
