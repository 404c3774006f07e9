#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "satotate/arith.hpp"
#include "satotate/report.hpp"

namespace satotate {

/// Exact tau(1..limit). taus[0] is an unused zero so that taus[n] = tau(n).
struct ExactTauTable {
    std::uint64_t limit = 0;
    std::vector<mpz_class> taus;

    const mpz_class& operator[](std::uint64_t n) const { return taus[n]; }
    bool operator==(const ExactTauTable&) const = default;
};

/// Four 62-bit primes with 2^23 | p - 1; three of them cover limits up to 2^22.
std::vector<std::uint64_t> default_ntt_primes();

struct TauConfig {
    std::uint64_t limit = 1;
    std::vector<std::uint64_t> ntt_primes = default_ntt_primes();
    // Cross-check the first min(limit, 500) coefficients against the naive product.
    bool verify_small = false;
};

/// Bits needed for the CRT modulus to recover every coefficient of the limit's
/// eighth power of the truncated cube-of-eta seed (sign included).
unsigned required_crt_bits(std::uint64_t limit);

/// Throws ConfigError when the primes are unusable for this limit.
void validate_tau_config(const TauConfig& config);

/// tau(n) from Delta = q * (eta^3)^8 by three NTT squarings per prime and CRT.
ExactTauTable expand_delta(const TauConfig& config);

inline constexpr std::uint64_t kNaiveOracleLimit = 10'000;

/// Quadratic reference: dense product of (1 - q^k)^24 with big integers.
ExactTauTable tau_naive_oracle(std::uint64_t limit);

/// a_n = tau(n) / n^{11/2}.
NormalizedSequence normalize_tau(const ExactTauTable& table);

/// theta_p = arccos(tau(p) / (2 p^{11/2})) for each prime p <= limit.
/// DataCorruptionError if |tau(p)| > 2 p^{11/2}.
AngleSeries tau_angles(const ExactTauTable& table);

/// Multiplicativity over coprime pairs (all pairs up to 10^5, sampled above),
/// |tau(n)| <= d(n) n^{11/2}, and tau(n) = sigma_11(n) mod 691.
VerificationReport integrity_check(const ExactTauTable& table);

}  // namespace satotate
