#include "cmgaps/character.hpp"

#include "cmgaps/parallel.hpp"
#include "cmgaps/primes.hpp"

#include <algorithm>
#include <string>

namespace cmgaps {

FormSpec FormSpec::canonical(unsigned m) {
    FormSpec spec;
    spec.power_m = m;
    spec.validate();
    return spec;
}

bool FormSpec::is_bad(std::uint64_t p) const {
    return std::find(bad_primes.begin(), bad_primes.end(), p) != bad_primes.end();
}

void FormSpec::validate() const {
    if (power_m % 2 == 0) throw contract_error("m must be odd");
    if (power_m < 1 || power_m > max_power_m)
        throw contract_error("m must lie in [1, " + std::to_string(max_power_m) + "]");
    if (level == 0) throw contract_error("level must be positive");
    for (auto p : bad_primes) {
        if (p < 2 || level % p != 0)
            throw contract_error("bad prime " + std::to_string(p) + " does not divide the level");
    }
}

void CurveSpec::validate() const {
    if (a_param == 0) throw contract_error("curve parameter a must be nonzero");
}

bool CurveSpec::good_reduction_at(std::uint64_t p) const {
    // discriminant -64 a^3: bad exactly at 2 and the primes dividing a
    if (p == 2) return false;
    std::int64_t r = a_param % static_cast<std::int64_t>(p);
    return r != 0;
}

GaussInt psi_prime(std::uint64_t p) {
    if (classify_prime(p) != PrimeClass::split)
        throw contract_error("psi_prime: " + std::to_string(p) + " is not split");
    GaussInt pi = primary_associate(split_two_squares(p));
    return pi.im > 0 ? pi : conj(pi);
}

i128 a_p_character(std::uint64_t p, const FormSpec& spec) {
    if (spec.is_bad(p) || classify_prime(p) != PrimeClass::split) return 0;
    WideGaussInt pi{psi_prime(p)};
    WideGaussInt power = pow(pi, spec.power_m);
    // pi^m + conj(pi)^m = 2 Re(pi^m)
    return checked_mul<i128>(2, power.re);
}

std::int64_t point_count_ap(const CurveSpec& curve, std::uint64_t p) {
    curve.validate();
    if (p > point_count_budget)
        throw budget_error("point_count_ap: p = " + std::to_string(p) + " exceeds the brute-force budget");
    if (!is_prime(p)) throw contract_error("point_count_ap: " + std::to_string(p) + " is not prime");
    if (!curve.good_reduction_at(p))
        throw contract_error("point_count_ap: bad reduction at " + std::to_string(p));

    std::vector<std::uint8_t> is_square(p, 0);
    for (std::uint64_t x = 1; x < p; ++x) is_square[x * x % p] = 1;

    std::int64_t a_mod = curve.a_param % static_cast<std::int64_t>(p);
    if (a_mod < 0) a_mod += static_cast<std::int64_t>(p);
    const auto a = static_cast<std::uint64_t>(a_mod);

    std::uint64_t points = 1;  // point at infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t rhs = (x * x % p * x + a * x) % p;
        if (rhs == 0)
            points += 1;
        else if (is_square[rhs])
            points += 2;
    }
    const auto ap = static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(points);
    if (static_cast<i128>(ap) * ap > 4 * static_cast<i128>(p))
        throw contract_error("point_count_ap: Hasse bound violated at p = " + std::to_string(p));
    return ap;
}

namespace {

constexpr std::size_t primes_per_chunk = 256;

// Primes in [lo, hi], split into fixed-size chunks so the merge order never
// depends on the worker count.
std::vector<std::uint32_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    auto all = primes_up_to(hi);
    all.erase(all.begin(), std::lower_bound(all.begin(), all.end(), lo));
    return all;
}

template <class Partial, class PerPrime, class Merge>
void scan_primes(const std::vector<std::uint32_t>& primes, PerPrime per_prime, Merge merge) {
    const std::size_t n_chunks = (primes.size() + primes_per_chunk - 1) / primes_per_chunk;
    std::vector<Partial> parts(n_chunks);
    parallel_chunks(n_chunks, thread_count(), [&](std::size_t c) {
        const std::size_t end = std::min(primes.size(), (c + 1) * primes_per_chunk);
        for (std::size_t i = c * primes_per_chunk; i < end; ++i) per_prime(parts[c], primes[i]);
    });
    for (auto& part : parts) merge(part);
}

}  // namespace

DeuringReport deuring_check(const CurveSpec& curve, std::uint64_t p_max) {
    curve.validate();
    if (p_max > point_count_budget) throw budget_error("deuring_check: p_max exceeds 10^6");
    DeuringReport report;
    report.p_max = p_max;
    scan_primes<DeuringReport>(
        primes_between(5, p_max),
        [&](DeuringReport& part, std::uint64_t p) {
            if (!curve.good_reduction_at(p)) return;
            const bool zero = point_count_ap(curve, p) == 0;
            const bool inert = classify_prime(p) == PrimeClass::inert;
            if (inert) {
                ++part.inert_checked;
                part.inert_zero += zero;
            } else {
                ++part.split_checked;
                part.split_nonzero += !zero;
            }
            if (zero != inert) part.violations.push_back(p);
        },
        [&](DeuringReport& part) {
            report.split_checked += part.split_checked;
            report.split_nonzero += part.split_nonzero;
            report.inert_checked += part.inert_checked;
            report.inert_zero += part.inert_zero;
            report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
        });
    return report;
}

AgreementReport ap_agreement_check(const CurveSpec& curve, const FormSpec& spec, std::uint64_t p_max) {
    curve.validate();
    spec.validate();
    if (curve.a_param != -1 || spec.power_m != 1)
        throw contract_error("ap_agreement_check: defined only for a = -1 and m = 1");
    if (p_max > point_count_budget) throw budget_error("ap_agreement_check: p_max exceeds 10^6");
    AgreementReport report;
    report.p_max = p_max;
    scan_primes<AgreementReport>(
        primes_between(2, p_max),
        [&](AgreementReport& part, std::uint64_t p) {
            if (!curve.good_reduction_at(p) || spec.is_bad(p)) return;
            ++part.checked;
            const i128 character = a_p_character(p, spec);
            const std::int64_t counted = point_count_ap(curve, p);
            if (character != counted) part.violations.push_back({p, character, counted});
        },
        [&](AgreementReport& part) {
            report.checked += part.checked;
            report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
        });
    return report;
}

CorrespondenceReport nonvanishing_correspondence(unsigned m, std::uint64_t p_max) {
    const FormSpec base = FormSpec::canonical(1);
    const FormSpec power = FormSpec::canonical(m);
    CorrespondenceReport report;
    report.power_m = m;
    report.p_max = p_max;
    scan_primes<CorrespondenceReport>(
        primes_between(5, p_max),
        [&](CorrespondenceReport& part, std::uint64_t p) {
            ++part.checked;
            const bool zero_m = a_p_character(p, power) == 0;
            const bool zero_1 = a_p_character(p, base) == 0;
            part.zero_count += zero_m;
            if (zero_m != zero_1) part.violations.push_back(p);
        },
        [&](CorrespondenceReport& part) {
            report.checked += part.checked;
            report.zero_count += part.zero_count;
            report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
        });
    return report;
}

}  // namespace cmgaps
