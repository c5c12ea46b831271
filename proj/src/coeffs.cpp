#include "cmgaps/coeffs.hpp"

#include "cmgaps/parallel.hpp"
#include "cmgaps/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace cmgaps {

i128 coeff_prime_power(std::uint64_t p, unsigned r, const FormSpec& spec) {
    if (r == 0) return 1;
    if (spec.is_bad(p)) return 0;
    const i128 ap = a_p_character(p, spec);
    const i128 pm = checked_pow<i128>(static_cast<i128>(p), spec.power_m);
    i128 prev = 1;  // a(p^0)
    i128 cur = ap;  // a(p^1)
    for (unsigned k = 2; k <= r; ++k) {
        i128 next = checked_sub(checked_mul(ap, cur), checked_mul(pm, prev));
        prev = cur;
        cur = next;
    }
    return cur;
}

i128 coeff(std::uint64_t n, const FormSpec& spec, std::uint64_t max_n) {
    i128 value = 1;
    for (const auto& f : gauss_factor(n, max_n)) {
        value = checked_mul(value, coeff_prime_power(f.prime, f.exponent, spec));
        if (value == 0) break;
    }
    return value;
}

i128 coeff_via_ideals(std::uint64_t n, const FormSpec& spec) {
    if (n == 0 || n > ideal_sum_budget)
        throw budget_error("coeff_via_ideals: n = " + std::to_string(n) + " outside [1, 10^7]");
    // elements of even norm are divisible by 1+i and never coprime to the modulus
    if (n % 2 == 0) return 0;
    WideGaussInt sum{0, 0};
    const auto r = static_cast<std::int64_t>(isqrt(n));
    for (std::int64_t a = -r; a <= r; ++a) {
        const auto b2 = n - static_cast<std::uint64_t>(a * a);
        const auto b = static_cast<std::int64_t>(isqrt(b2));
        if (static_cast<std::uint64_t>(b * b) != b2) continue;
        for (std::int64_t sb : {b, -b}) {
            GaussInt alpha{a, sb};
            if (is_primary(alpha)) sum += pow(WideGaussInt{alpha}, spec.power_m);
            if (b == 0) break;
        }
    }
    if (sum.im != 0) throw contract_error("coeff_via_ideals: ideal sum is not rational");
    return sum.re;
}

std::string_view to_string(Strategy s) {
    return s == Strategy::recurrence ? "recurrence" : "lattice";
}

std::uint64_t batch_limit(unsigned m) {
    if (m <= 1) return 100'000'000;
    if (m <= 5) return 10'000'000;
    return 100'000;
}

namespace {

constexpr std::uint64_t segment_size = 1 << 18;

// |a(p^k)| <= (k+1) p^{km/2}, the Deligne envelope for a prime power.
void check_envelope(i128 value, std::uint64_t p, unsigned k, unsigned m) {
    const long double mag = std::fabs(static_cast<long double>(value));
    const long double bound =
        (k + 1) * std::pow(static_cast<long double>(p), static_cast<long double>(k) * m / 2.0L);
    if (mag > bound * (1.0L + 1e-12L))
        throw contract_error("coefficient envelope violated at " + std::to_string(p) + "^" + std::to_string(k));
}

void fill_by_recurrence(CoeffSeries& series) {
    const std::uint64_t limit = series.limit;
    const FormSpec& spec = series.form;
    const auto base = primes_up_to(isqrt(limit));

    // a(p^k) for every base prime and every p^k <= limit
    std::vector<std::vector<i128>> tables(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const std::uint64_t p = base[i];
        std::uint64_t pk = 1;
        for (unsigned k = 0;; ++k) {
            const i128 v = coeff_prime_power(p, k, spec);
            check_envelope(v, p, k, spec.power_m);
            tables[i].push_back(v);
            if (pk > limit / p) break;
            pk *= p;
        }
    }

    const std::size_t n_segments = (limit + segment_size) / segment_size;
    parallel_chunks(n_segments, thread_count(), [&](std::size_t s) {
        const std::uint64_t lo = std::max<std::uint64_t>(1, s * segment_size);
        const std::uint64_t hi = std::min<std::uint64_t>(limit + 1, (s + 1) * segment_size);
        if (lo >= hi) return;
        const std::size_t len = hi - lo;
        std::vector<std::uint64_t> rest(len);
        std::vector<i128> value(len, 1);
        for (std::size_t j = 0; j < len; ++j) rest[j] = lo + j;

        for (std::size_t i = 0; i < base.size(); ++i) {
            const std::uint64_t p = base[i];
            if (p * p >= hi) break;
            for (std::uint64_t n = (lo + p - 1) / p * p; n < hi; n += p) {
                const std::size_t j = n - lo;
                unsigned k = 0;
                while (rest[j] % p == 0) {
                    rest[j] /= p;
                    ++k;
                }
                value[j] = checked_mul(value[j], tables[i][k]);
            }
        }
        for (std::size_t j = 0; j < len; ++j) {
            if (rest[j] > 1 && value[j] != 0) {
                // a single prime factor above sqrt(n) is left over
                const i128 aq = coeff_prime_power(rest[j], 1, spec);
                check_envelope(aq, rest[j], 1, spec.power_m);
                value[j] = checked_mul(value[j], aq);
            }
            series.values[lo + j] = narrow_i64(value[j]);
        }
    });
}

void fill_by_lattice(CoeffSeries& series) {
    const std::uint64_t limit = series.limit;
    const unsigned m = series.form.power_m;
    // the lattice sweep has no notion of extra bad primes beyond (1+i)
    for (auto p : series.form.bad_primes) {
        if (p != 2) throw contract_error("lattice strategy supports only the prime 2 as a bad prime");
    }

    // annulus partition: each chunk owns the norms in [lo, hi)
    const std::size_t n_chunks = (limit + segment_size) / segment_size;
    parallel_chunks(n_chunks, thread_count(), [&](std::size_t c) {
        const std::uint64_t lo = std::max<std::uint64_t>(1, c * segment_size);
        const std::uint64_t hi = std::min<std::uint64_t>(limit + 1, (c + 1) * segment_size);
        if (lo >= hi) return;
        std::vector<i128> acc(hi - lo, 0);
        const auto a_max = static_cast<std::int64_t>(isqrt(hi - 1));
        for (std::int64_t a = -a_max; a <= a_max; ++a) {
            // primary: a == 1, b == 0 (mod 4) or a == 3, b == 2 (mod 4)
            const std::int64_t a_mod = ((a % 4) + 4) % 4;
            if (a_mod != 1 && a_mod != 3) continue;
            const std::uint64_t b_res = a_mod == 1 ? 0 : 2;
            const auto a2 = static_cast<std::uint64_t>(a * a);
            const std::uint64_t b_hi = isqrt(hi - 1 - a2);
            std::uint64_t b_lo = 0;
            if (lo > a2) {
                b_lo = isqrt(lo - a2 - 1) + 1;  // smallest b with a^2 + b^2 >= lo
            }
            std::uint64_t b = b_lo + (b_res + 4 - b_lo % 4) % 4;
            for (; b <= b_hi; b += 4) {
                const std::uint64_t n = a2 + b * b;
                // a + bi and a - bi are both primary; their alpha^m sum is 2 Re(alpha^m)
                i128 re;
                if (m == 1) {
                    re = a;
                } else {
                    re = pow(WideGaussInt{a, static_cast<i128>(b)}, m).re;
                }
                const i128 contribution = b == 0 ? re : checked_mul<i128>(2, re);
                acc[n - lo] = checked_add(acc[n - lo], contribution);
            }
        }
        for (std::uint64_t n = lo; n < hi; ++n) series.values[n] = narrow_i64(acc[n - lo]);
    });
}

}  // namespace

CoeffSeries batch_series(std::uint64_t limit, const FormSpec& spec, Strategy strategy) {
    spec.validate();
    if (limit == 0) throw budget_error("batch_series: limit must be positive");
    if (limit > batch_limit(spec.power_m))
        throw budget_error("batch_series: limit " + std::to_string(limit) + " exceeds the budget " +
                           std::to_string(batch_limit(spec.power_m)) + " for m = " +
                           std::to_string(spec.power_m));
    CoeffSeries series{spec, limit, std::vector<std::int64_t>(limit + 1, 0)};
    if (strategy == Strategy::recurrence)
        fill_by_recurrence(series);
    else
        fill_by_lattice(series);
    return series;
}

KrwReport krw_property_check(const CoeffSeries& series, std::uint64_t p_max) {
    KrwReport report;
    report.p_max = p_max;
    const std::uint64_t bound = std::min(p_max, series.limit);
    for (std::uint64_t p : primes_up_to(bound)) {
        if (series.form.is_bad(p)) continue;
        ++report.primes_checked;
        if (series[p] == 0) {
            ++report.hypothesis_false;
            continue;
        }
        std::uint64_t pr = p;
        for (unsigned r = 2; pr <= series.limit / p; ++r) {
            pr *= p;
            ++report.powers_checked;
            if (series[pr] == 0) report.violations.push_back({p, r});
        }
    }
    return report;
}

InertPowerReport inert_power_check(const CoeffSeries& series, std::uint64_t q_max) {
    InertPowerReport report;
    report.q_max = q_max;
    const std::uint64_t bound = std::min(q_max, series.limit);
    for (std::uint64_t q : primes_up_to(bound)) {
        if (classify_prime(q) != PrimeClass::inert || series.form.is_bad(q)) continue;
        const i128 step = -checked_pow<i128>(static_cast<i128>(q), series.form.power_m);
        i128 even_value = 1;  // (-q^m)^r
        std::uint64_t qk = 1;
        for (unsigned k = 1; qk <= series.limit / q; ++k) {
            qk *= q;
            i128 expected = 0;
            if (k % 2 == 0) {
                even_value = checked_mul(even_value, step);
                expected = even_value;
            }
            ++report.checked;
            if (series[qk] != expected) report.violations.push_back({q, k});
        }
    }
    return report;
}

namespace {

template <class T>
void put_le(std::ostream& out, T v) {
    std::array<char, sizeof(T)> bytes{};
    auto u = static_cast<std::make_unsigned_t<T>>(v);
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xFF);
    out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw contract_error("series file truncated");
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<std::make_unsigned_t<T>>(bytes[i]) << (8 * i);
    return static_cast<T>(u);
}

}  // namespace

void write_series_binary(const CoeffSeries& series, std::ostream& out) {
    out.write("CMGS", 4);
    put_le<std::uint32_t>(out, series_format_version);
    put_le<std::uint32_t>(out, series.form.power_m);
    put_le<std::uint64_t>(out, series.limit);
    for (std::uint64_t n = 1; n <= series.limit; ++n) put_le<std::int64_t>(out, series.values[n]);
}

CoeffSeries read_series_binary(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), 4) || std::string_view(magic.data(), 4) != "CMGS")
        throw contract_error("not a CMGS series file");
    if (get_le<std::uint32_t>(in) != series_format_version) throw contract_error("unsupported series version");
    const auto m = get_le<std::uint32_t>(in);
    const auto limit = get_le<std::uint64_t>(in);
    CoeffSeries series{FormSpec::canonical(m), limit, {}};
    series.values.assign(limit + 1, 0);
    for (std::uint64_t n = 1; n <= limit; ++n) series.values[n] = get_le<std::int64_t>(in);
    return series;
}

void write_series_csv(const CoeffSeries& series, std::ostream& out) {
    out << "n,a_n\n";
    for (std::uint64_t n = 1; n <= series.limit; ++n) {
        if (series.values[n] != 0) out << n << ',' << series.values[n] << '\n';
    }
}

}  // namespace cmgaps
