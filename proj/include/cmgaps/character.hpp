// character.hpp
//
// The Hecke character Psi of Q(i) with modulus (1+i)^3 and its odd powers
// Psi^m, evaluated on prime ideals, plus a brute-force point-counting oracle
// for the curves y^2 = x^3 + a x that checks the character values against
// #E(F_p).
//
// For a split prime p = pi * conj(pi) with pi primary, the form of weight m+1
// attached to Psi^m has a(p) = pi^m + conj(pi)^m. Inert primes carry no ideal
// of norm p, so a(p) = 0 there; the ramified prime 2 divides the modulus and
// contributes 0 as well.

#pragma once

#include "cmgaps/arith.hpp"
#include "cmgaps/gaussian.hpp"

#include <cstdint>
#include <vector>

namespace cmgaps {

inline constexpr unsigned max_power_m = 19;

// A CM eigenform f_{Psi^m} of weight m+1 and trivial nebentypus.
struct FormSpec {
    unsigned power_m = 1;
    std::uint64_t level = 32;
    std::vector<std::uint64_t> bad_primes{2};

    static constexpr bool trivial_nebentypus = true;

    // The family member built from the conductor-32 character.
    static FormSpec canonical(unsigned m);

    unsigned weight() const { return power_m + 1; }
    bool is_bad(std::uint64_t p) const;

    // Throws contract_error on even m, m outside [1, 19], or a bad prime not dividing the level.
    void validate() const;
};

// y^2 = x^3 + a_param * x
struct CurveSpec {
    std::int64_t a_param = -1;

    void validate() const;
    bool good_reduction_at(std::uint64_t p) const;
};

// Primary generator of a prime ideal above the split prime p; of the two
// conjugate generators, the one with positive imaginary part.
GaussInt psi_prime(std::uint64_t p);

// a(p) for the form attached to Psi^m. Exact; throws overflow_error past 128 bits.
i128 a_p_character(std::uint64_t p, const FormSpec& spec);

inline constexpr std::uint64_t point_count_budget = 1'000'000;

// p + 1 - #E(F_p) by direct enumeration of x in F_p. Requires good reduction.
std::int64_t point_count_ap(const CurveSpec& curve, std::uint64_t p);

struct DeuringReport {
    std::uint64_t p_max = 0;
    std::uint64_t split_checked = 0;
    std::uint64_t split_nonzero = 0;
    std::uint64_t inert_checked = 0;
    std::uint64_t inert_zero = 0;
    // primes where (a_p == 0) disagrees with (p inert)
    std::vector<std::uint64_t> violations;

    bool ok() const { return violations.empty(); }
};

// Over good primes 5 <= p <= p_max: point_count_ap(p) == 0 iff p is inert.
DeuringReport deuring_check(const CurveSpec& curve, std::uint64_t p_max);

struct ApMismatch {
    std::uint64_t p;
    i128 character;
    std::int64_t point_count;
};

struct AgreementReport {
    std::uint64_t p_max = 0;
    std::uint64_t checked = 0;
    std::vector<ApMismatch> violations;

    bool ok() const { return violations.empty(); }
};

// a_p_character(p, m=1) == point_count_ap(p) for every good p <= p_max.
// Only defined for the canonical curve a = -1 and m = 1.
AgreementReport ap_agreement_check(const CurveSpec& curve, const FormSpec& spec, std::uint64_t p_max);

struct CorrespondenceReport {
    unsigned power_m = 1;
    std::uint64_t p_max = 0;
    std::uint64_t checked = 0;
    std::uint64_t zero_count = 0;
    std::vector<std::uint64_t> violations;

    bool ok() const { return violations.empty(); }
};

// For primes 5 <= p <= p_max: a_{Psi^m}(p) == 0 iff a_Psi(p) == 0.
CorrespondenceReport nonvanishing_correspondence(unsigned m, std::uint64_t p_max);

}  // namespace cmgaps
