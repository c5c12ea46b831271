#include "cmgaps/primes.hpp"

#include "cmgaps/arith.hpp"

#include <string>

namespace cmgaps {

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    if (limit > 0xFFFFFFFFull) throw budget_error("primes_up_to: limit exceeds 32-bit range");
    primes.push_back(2);
    // composite[i] describes 2i+1
    std::vector<bool> composite(limit / 2 + 1, false);
    for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
        if (composite[i]) continue;
        std::uint64_t p = 2 * i + 1;
        primes.push_back(static_cast<std::uint32_t>(p));
        for (std::uint64_t q = p * p; q <= limit; q += 2 * p) composite[q / 2] = true;
    }
    return primes;
}

SpfTable::SpfTable(std::uint32_t limit) : limit_(limit), spf_(static_cast<std::size_t>(limit) + 1, 0) {
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] != 0) continue;
        spf_[i] = static_cast<std::uint32_t>(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) {
            if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
}

std::vector<std::pair<std::uint64_t, unsigned>> SpfTable::factor(std::uint32_t n) const {
    if (n == 0 || n > limit_)
        throw budget_error("SpfTable::factor: " + std::to_string(n) + " outside table");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    while (n > 1) {
        std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

}  // namespace cmgaps
