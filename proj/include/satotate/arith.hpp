#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace satotate {

/// Smallest-prime-factor table for 2..limit, filled by a linear sieve.
class SpfSieve {
  public:
    SpfSieve() = default;
    SpfSieve(std::uint64_t limit, std::vector<std::uint32_t> spf, std::vector<std::uint32_t> primes)
        : limit_(limit), spf_(std::move(spf)), primes_(std::move(primes)) {}

    std::uint64_t limit() const { return limit_; }
    std::uint32_t spf(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
    /// All primes <= limit, increasing.
    std::span<const std::uint32_t> primes() const { return primes_; }
    std::span<const std::uint32_t> table() const { return spf_; }

  private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

inline constexpr std::size_t kDefaultSieveBudget = std::size_t{1} << 30;

/// Throws CapacityError when limit < 2, limit > 2^32, or the table would not
/// fit in memory_budget bytes.
SpfSieve build_spf_sieve(std::uint64_t limit, std::size_t memory_budget = kDefaultSieveBudget);

struct PrimePower {
    std::uint64_t p;
    unsigned k;
    bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

/// Canonical factorization, primes increasing; 1 yields {}. RangeError past the sieve.
Factorization factorize(std::uint64_t n, const SpfSieve& sieve);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

enum class RuleKind { HeckeChebyshev, TruncateZero, ExactIntegerHecke };

std::string to_string(RuleKind kind);
RuleKind parse_rule_kind(const std::string& name);

/// Prescribes a_{p^k} from the prime angle. rho is the growth exponent in
/// |a_{p^k}| <= p^{(k-1)/2 - rho}.
struct PrimePowerRule {
    RuleKind kind = RuleKind::HeckeChebyshev;
    double rho = 0.25;

    /// hecke-chebyshev: sin((k+1)t)/sin(t), with limits +-(k+1) at t = 0, pi.
    /// truncate-zero: 2cos(t) at k = 1, zero above.
    /// exact-integer-hecke: same values as hecke-chebyshev, evaluated through
    /// the three-term recurrence u_{k+1} = 2cos(t) u_k - u_{k-1}.
    double value(double theta, unsigned k) const;
};

struct AngleRecord {
    std::uint64_t p;
    double a_p;    // 2 cos(theta)
    double theta;  // in [0, pi]
    bool operator==(const AngleRecord&) const = default;
};

struct AngleSeries {
    std::uint64_t limit = 0;
    std::vector<AngleRecord> records;  // increasing in p
    bool operator==(const AngleSeries&) const = default;
};

AngleSeries angles_from_thetas(std::uint64_t limit, std::span<const std::uint32_t> primes,
                               std::span<const double> thetas);

enum class SequenceSource : std::uint8_t { Tau = 0, Elliptic = 1, Synthetic = 2 };

std::string to_string(SequenceSource source);
SequenceSource parse_source(const std::string& name);

/// Real multiplicative sequence a_1..a_limit. values[0] is unused (0).
struct NormalizedSequence {
    std::uint64_t limit = 0;
    std::vector<double> values;
    SequenceSource source = SequenceSource::Synthetic;

    double operator[](std::uint64_t n) const { return values[n]; }
    bool operator==(const NormalizedSequence&) const = default;
};

using PrimePowerValue = std::function<double(std::uint64_t p, unsigned k)>;

/// a_1 = 1, a_n = product over p^k || n of prime_power(p, k). prime_power is
/// invoked once per prime power <= limit.
NormalizedSequence assemble_from_prime_powers(const SpfSieve& sieve, std::uint64_t limit,
                                              SequenceSource source,
                                              const PrimePowerValue& prime_power);

/// Throws IncompleteInputError if some prime <= limit has no angle.
NormalizedSequence assemble_multiplicative(const AngleSeries& angles, const PrimePowerRule& rule,
                                           std::uint64_t limit, const SpfSieve& sieve,
                                           SequenceSource source = SequenceSource::Synthetic);

struct GrowthViolation {
    std::uint64_t p;
    unsigned k;
    double magnitude;
    double bound;
};

/// Every (p, k), 2 <= k <= max_exponent, with |rule(theta_p, k)| > p^{(k-1)/2 - rho}.
std::vector<GrowthViolation> growth_violations(const PrimePowerRule& rule,
                                               const AngleSeries& angles, unsigned max_exponent);

}  // namespace satotate
