// gaussian.hpp
//
// Exact arithmetic in Z[i]: norms, associates, the primary normalization
// alpha == 1 mod (1+i)^3, splitting of rational primes and factorization
// tagged by splitting type.
//
// Field constants for K = Q(i): discriminant d_K = -4, the unique ramified
// prime is 2 = -i(1+i)^2, and the modulus used for primary generators is
// (1+i)^3 = -2+2i, of norm 8.

#pragma once

#include "cmgaps/arith.hpp"

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace cmgaps {

class SpfTable;

inline constexpr int discriminant_qi = -4;

template <class T>
struct GaussianInteger {
    T re{};
    T im{};

    constexpr GaussianInteger() = default;
    constexpr GaussianInteger(T re_, T im_ = 0) : re(re_), im(im_) {}

    template <class U>
    constexpr explicit GaussianInteger(const GaussianInteger<U>& other) : re(other.re), im(other.im) {}

    friend constexpr bool operator==(const GaussianInteger&, const GaussianInteger&) = default;

    constexpr GaussianInteger operator-() const { return {checked_sub<T>(0, re), checked_sub<T>(0, im)}; }

    friend constexpr GaussianInteger operator+(const GaussianInteger& a, const GaussianInteger& b) {
        return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
    }
    friend constexpr GaussianInteger operator-(const GaussianInteger& a, const GaussianInteger& b) {
        return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
    }
    friend constexpr GaussianInteger operator*(const GaussianInteger& a, const GaussianInteger& b) {
        return {checked_sub(checked_mul(a.re, b.re), checked_mul(a.im, b.im)),
                checked_add(checked_mul(a.re, b.im), checked_mul(a.im, b.re))};
    }
    GaussianInteger& operator*=(const GaussianInteger& b) { return *this = *this * b; }
    GaussianInteger& operator+=(const GaussianInteger& b) { return *this = *this + b; }
};

using GaussInt = GaussianInteger<std::int64_t>;
using WideGaussInt = GaussianInteger<i128>;

template <class T>
constexpr GaussianInteger<T> conj(const GaussianInteger<T>& z) {
    return {z.re, checked_sub<T>(0, z.im)};
}

// i * z
template <class T>
constexpr GaussianInteger<T> times_i(const GaussianInteger<T>& z) {
    return {checked_sub<T>(0, z.im), z.re};
}

// re^2 + im^2; throws overflow_error if it does not fit in T.
template <class T>
constexpr T norm(const GaussianInteger<T>& z) {
    return checked_add(checked_mul(z.re, z.re), checked_mul(z.im, z.im));
}

template <class T>
GaussianInteger<T> pow(GaussianInteger<T> base, unsigned exp) {
    GaussianInteger<T> result{1, 0};
    while (exp > 0) {
        if (exp & 1) result *= base;
        exp >>= 1;
        if (exp > 0) base *= base;
    }
    return result;
}

std::ostream& operator<<(std::ostream& os, const GaussInt& z);

enum class PrimeClass { split, inert, ramified };

std::string_view to_string(PrimeClass c);

// Splitting type of a rational prime p in Z[i]. Primality is not re-checked.
PrimeClass classify_prime(std::uint64_t p);

// The representation p = a^2 + b^2 with 0 < a < b, returned as a + bi.
// Throws contract_error unless p is a split prime.
GaussInt split_two_squares(std::uint64_t p);

// w == 1 mod (1+i)^3, tested as: (w - 1) * conj((1+i)^3) has both parts divisible by 8.
bool is_primary(const GaussInt& w);

// The unique associate u*z (u a unit) that is primary. z must have odd norm.
GaussInt primary_associate(const GaussInt& z);

struct PrimeFactor {
    std::uint64_t prime;
    unsigned exponent;
    PrimeClass cls;

    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

inline constexpr std::uint64_t default_factor_max = 1'000'000'000;

// Rational factorization of n by trial division, each prime tagged by class.
std::vector<PrimeFactor> gauss_factor(std::uint64_t n, std::uint64_t max_n = default_factor_max);

// Same, using a precomputed smallest-prime-factor table (n <= table.limit()).
std::vector<PrimeFactor> gauss_factor(std::uint64_t n, const SpfTable& table);

}  // namespace cmgaps
