// oracle.hpp - brute-force reference computations used only by the tests.
//
// Each function here is deliberately naive and shares no code path with the
// library routine it checks.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime_naive(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// p = a^2 + b^2 with 0 < a < b, by trying every a <= sqrt(p/2).
inline std::optional<std::pair<std::int64_t, std::int64_t>> two_squares_exhaustive(std::uint64_t p) {
    for (std::uint64_t a = 1; 2 * a * a < p; ++a) {
        for (std::uint64_t b = a + 1; a * a + b * b <= p; ++b) {
            if (a * a + b * b == p) return std::pair{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
        }
    }
    return std::nullopt;
}

inline std::uint64_t powmod_naive(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    for (; e; e >>= 1, b = b * b % m)
        if (e & 1) r = r * b % m;
    return r;
}

// #E(F_p) for y^2 = x^3 + a x by counting pairs (x, y) directly; p small.
inline std::int64_t point_count_pairs(std::int64_t a, std::uint64_t p) {
    const auto P = static_cast<std::int64_t>(p);
    std::int64_t count = 1;
    for (std::int64_t x = 0; x < P; ++x) {
        const std::int64_t rhs = (((x * x % P) * x + a * x) % P + P) % P;
        for (std::int64_t y = 0; y < P; ++y)
            if (y * y % P == rhs) ++count;
    }
    return P + 1 - count;
}

inline bool is_sum_of_two_squares(std::uint64_t n) {
    for (std::uint64_t a = 0; a * a <= n; ++a)
        for (std::uint64_t b = a; a * a + b * b <= n; ++b)
            if (a * a + b * b == n) return true;
    return false;
}

// Every prime q == 3 mod 4 divides n to an even power.
inline bool inert_primes_even(std::uint64_t n) {
    if (n == 0) return true;
    for (std::uint64_t q = 3; q * q <= n; q += 2) {
        unsigned e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        if (q % 4 == 3 && e % 2 == 1) return false;
    }
    while (n % 2 == 0) n /= 2;
    return n == 1 || n % 4 == 1;
}

inline std::uint64_t divisor_count(std::uint64_t n) {
    std::uint64_t d = 0;
    for (std::uint64_t k = 1; k * k <= n; ++k)
        if (n % k == 0) d += (k * k == n) ? 1 : 2;
    return d;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261016);
    return gen;
}

}  // namespace oracle
