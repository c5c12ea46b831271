// arith.hpp
//
// Exact integer helpers shared by every module: checked 64/128-bit arithmetic,
// modular exponentiation, integer square roots and the error types used
// throughout the library.
//
// All arithmetic that can overflow is checked; nothing wraps silently.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace cmgaps {

using i128 = __int128;

// Arithmetic left the exactly representable range.
struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// A precondition on the input was violated (non-split prime, even norm, ...).
struct contract_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A size or time budget (limit, p_max, segment size) was exceeded.
struct budget_error : std::length_error {
    using std::length_error::length_error;
};

template <class T>
constexpr T checked_add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("integer overflow in addition");
    return r;
}

template <class T>
constexpr T checked_sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("integer overflow in subtraction");
    return r;
}

template <class T>
constexpr T checked_mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("integer overflow in multiplication");
    return r;
}

template <class T>
constexpr T checked_pow(T base, unsigned exp) {
    T r = 1;
    for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

inline std::int64_t narrow_i64(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw overflow_error("coefficient does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

std::string to_string(i128 v);

// floor(sqrt(n)), exact for the full 64-bit range.
std::uint64_t isqrt(std::uint64_t n);

// (a * b) mod m without overflow for any 64-bit operands.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Legendre symbol (a / p) for odd prime p, via Euler's criterion. Returns -1, 0 or 1.
int legendre(std::int64_t a, std::uint64_t p);

// Deterministic primality for 64-bit n (Miller-Rabin with a fixed witness set).
bool is_prime(std::uint64_t n);

}  // namespace cmgaps
