#include "cmgaps/gaussian.hpp"

#include "cmgaps/primes.hpp"

#include <array>
#include <string>

namespace cmgaps {

std::ostream& operator<<(std::ostream& os, const GaussInt& z) {
    return os << '(' << z.re << ',' << z.im << ')';
}

std::string_view to_string(PrimeClass c) {
    switch (c) {
        case PrimeClass::split: return "split";
        case PrimeClass::inert: return "inert";
        case PrimeClass::ramified: return "ramified";
    }
    return "?";
}

PrimeClass classify_prime(std::uint64_t p) {
    if (p == 2) return PrimeClass::ramified;
    return p % 4 == 1 ? PrimeClass::split : PrimeClass::inert;
}

namespace {

// A square root of -1 mod p, p == 1 mod 4: c^((p-1)/4) for a quadratic non-residue c.
// The least non-residue of a prime is tiny, so the search is capped; hitting the
// cap means p was not prime.
std::uint64_t sqrt_minus_one(std::uint64_t p) {
    for (std::uint64_t c = 2; c < p && c < 4096; ++c) {
        std::uint64_t x = powmod(c, (p - 1) / 4, p);
        if (mulmod(x, x, p) == p - 1) return x;
    }
    throw contract_error("split_two_squares: " + std::to_string(p) + " is not a split prime");
}

}  // namespace

GaussInt split_two_squares(std::uint64_t p) {
    if (p < 5 || p % 4 != 1 || p > (1ull << 62))
        throw contract_error("split_two_squares: " + std::to_string(p) + " is not a split prime");
    // Hermite-Serret: run Euclid on (p, x) with x^2 == -1 and stop at the
    // first remainder below sqrt(p).
    std::uint64_t a = p;
    std::uint64_t b = sqrt_minus_one(p);
    if (b > p / 2) b = p - b;
    std::uint64_t root = isqrt(p);
    while (b > root) {
        std::uint64_t r = a % b;
        a = b;
        b = r;
    }
    std::uint64_t c2 = p - b * b;
    std::uint64_t c = isqrt(c2);
    if (c * c != c2)
        throw contract_error("split_two_squares: " + std::to_string(p) + " is not a split prime");
    auto lo = static_cast<std::int64_t>(std::min(b, c));
    auto hi = static_cast<std::int64_t>(std::max(b, c));
    return {lo, hi};
}

bool is_primary(const GaussInt& w) {
    // conj((1+i)^3) = conj(-2+2i) = -2-2i
    const i128 x = static_cast<i128>(w.re) - 1;
    const i128 y = w.im;
    const i128 re = -2 * x + 2 * y;
    const i128 im = -2 * x - 2 * y;
    return re % 8 == 0 && im % 8 == 0;
}

GaussInt primary_associate(const GaussInt& z) {
    if (((z.re ^ z.im) & 1) == 0)
        throw contract_error("primary_associate: element has even norm");
    GaussInt w = z;
    for (int k = 0; k < 4; ++k) {
        if (is_primary(w)) return w;
        w = times_i(w);
    }
    throw contract_error("primary_associate: no primary associate");  // unreachable for odd norm
}

std::vector<PrimeFactor> gauss_factor(std::uint64_t n, std::uint64_t max_n) {
    if (n == 0 || n > max_n)
        throw budget_error("gauss_factor: n = " + std::to_string(n) + " outside [1, " +
                           std::to_string(max_n) + "]");
    std::vector<PrimeFactor> out;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.push_back({p, e, classify_prime(p)});
    };
    take(2);
    for (std::uint64_t p = 3; p * p <= n; p += 2) take(p);
    if (n > 1) out.push_back({n, 1, classify_prime(n)});
    return out;
}

std::vector<PrimeFactor> gauss_factor(std::uint64_t n, const SpfTable& table) {
    if (n == 0 || n > table.limit())
        throw budget_error("gauss_factor: n = " + std::to_string(n) + " outside the factor table");
    std::vector<PrimeFactor> out;
    for (auto [p, e] : table.factor(static_cast<std::uint32_t>(n))) out.push_back({p, e, classify_prime(p)});
    return out;
}

}  // namespace cmgaps
