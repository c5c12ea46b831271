// coeffs.hpp
//
// Fourier coefficients a(1..X) of f_{Psi^m}, computed two independent ways:
//
//   recurrence  a(n) = prod a(p^r) over the factorization of n, with
//               a(p^r) = a(p) a(p^{r-1}) - p^m a(p^{r-2}) at good primes and
//               a(p^r) = 0 (r >= 1) at primes dividing the level;
//   lattice     a(n) = sum of alpha^m over the primary alpha of norm n, i.e.
//               the sum of Psi^m over ideals of norm n coprime to (1+i).
//
// Agreement of the two is the main correctness oracle for the series.

#pragma once

#include "cmgaps/arith.hpp"
#include "cmgaps/character.hpp"

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace cmgaps {

// a(p^r). r = 0 gives 1.
i128 coeff_prime_power(std::uint64_t p, unsigned r, const FormSpec& spec);

// a(n) by multiplicative assembly over gauss_factor(n).
i128 coeff(std::uint64_t n, const FormSpec& spec, std::uint64_t max_n = default_factor_max);

inline constexpr std::uint64_t ideal_sum_budget = 10'000'000;

// a(n) as the sum over primary alpha with norm(alpha) = n.
i128 coeff_via_ideals(std::uint64_t n, const FormSpec& spec);

struct CoeffSeries {
    FormSpec form;
    std::uint64_t limit = 0;
    // values[n] = a(n) for 1 <= n <= limit; values[0] is unused and 0
    std::vector<std::int64_t> values;

    std::int64_t operator[](std::uint64_t n) const { return values[n]; }
};

enum class Strategy { recurrence, lattice };

std::string_view to_string(Strategy s);

// Largest X accepted by batch_series for the given m.
std::uint64_t batch_limit(unsigned m);

// The full series a(1..X). Throws budget_error past batch_limit(m) and
// overflow_error if any a(n) leaves the 64-bit range.
CoeffSeries batch_series(std::uint64_t limit, const FormSpec& spec, Strategy strategy);

struct KrwViolation {
    std::uint64_t p;
    unsigned r;
};

struct KrwReport {
    std::uint64_t p_max = 0;
    std::uint64_t primes_checked = 0;
    // good primes with a(p) = 0, where the implication holds vacuously
    std::uint64_t hypothesis_false = 0;
    std::uint64_t powers_checked = 0;
    std::vector<KrwViolation> violations;

    bool ok() const { return violations.empty(); }
};

// For good p <= p_max with a(p) != 0: a(p^r) != 0 for every p^r <= limit.
KrwReport krw_property_check(const CoeffSeries& series, std::uint64_t p_max);

struct InertPowerReport {
    std::uint64_t q_max = 0;
    std::uint64_t checked = 0;
    // (q, exponent) pairs where a(q^{2r}) != (-q^m)^r or a(q^{2r+1}) != 0
    std::vector<KrwViolation> violations;

    bool ok() const { return violations.empty(); }
};

// For inert q <= q_max: a(q^{2r}) = (-q^m)^r and a(q^{2r+1}) = 0 wherever q^k <= limit.
InertPowerReport inert_power_check(const CoeffSeries& series, std::uint64_t q_max);

// Binary export: "CMGS", u32 version, u32 m, u64 X, then X little-endian i64 values a(1..X).
inline constexpr std::uint32_t series_format_version = 1;
void write_series_binary(const CoeffSeries& series, std::ostream& out);
CoeffSeries read_series_binary(std::istream& in);

// "n,a_n" rows for the nonzero coefficients, with a header line.
void write_series_csv(const CoeffSeries& series, std::ostream& out);

}  // namespace cmgaps
