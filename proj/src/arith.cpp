#include "cmgaps/arith.hpp"

#include <algorithm>
#include <cmath>

namespace cmgaps {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    // work with the magnitude as unsigned so INT128_MIN is handled
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (mag > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

int legendre(std::int64_t a, std::uint64_t p) {
    auto r = static_cast<std::int64_t>(a % static_cast<std::int64_t>(p));
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic for n < 3.3e24
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace cmgaps
