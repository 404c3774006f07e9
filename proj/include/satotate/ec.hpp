#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "satotate/arith.hpp"
#include "satotate/tau.hpp"

namespace satotate {

/// y^2 = x^3 + a4 x + a6 over Q, nonsingular.
class CurveSpec {
  public:
    /// InputError when the discriminant vanishes.
    CurveSpec(std::int64_t a4, std::int64_t a6);

    std::int64_t a4() const { return a4_; }
    std::int64_t a6() const { return a6_; }
    /// -16 (4 a4^3 + 27 a6^2)
    const mpz_class& discriminant() const { return disc_; }
    bool is_bad_prime(std::uint64_t p) const;
    bool operator==(const CurveSpec& o) const { return a4_ == o.a4_ && a6_ == o.a6_; }

  private:
    std::int64_t a4_;
    std::int64_t a6_;
    mpz_class disc_;
};

inline constexpr std::uint64_t kTraceSweepLimit = 10'000'000;
inline constexpr std::uint64_t kTraceSeriesBudget = 1'000'000;

/// t_p = p + 1 - #E(F_p). At bad primes this is the reduction type
/// (+1 split node, -1 nonsplit node, 0 cusp).
std::int64_t trace_at_prime(const CurveSpec& curve, std::uint64_t p);

struct TraceRecord {
    std::uint64_t p;
    std::int64_t t;
    bool good;
    bool operator==(const TraceRecord&) const = default;
};

struct TraceSeries {
    std::uint64_t limit = 0;
    std::optional<CurveSpec> curve;  // absent for adapted series (e.g. tau)
    std::vector<TraceRecord> records;
    bool operator==(const TraceSeries&) const = default;
};

TraceSeries trace_series(const CurveSpec& curve, std::uint64_t limit,
                         std::uint64_t budget = kTraceSeriesBudget);

/// Every prime is good and t_p = tau(p).
TraceSeries trace_series_from_tau(const ExactTauTable& table);

/// a_n = t_n / sqrt(n) with the Euler-factor recursion at good primes and
/// t_{p^k} = t_p^k at bad primes.
NormalizedSequence ec_normalized_sequence(const TraceSeries& series, const SpfSieve& sieve,
                                          std::uint64_t limit);

/// Angles at good primes only: theta_p = arccos(t_p / (2 sqrt p)).
AngleSeries ec_angles(const TraceSeries& series);

struct KappaEstimate {
    std::uint64_t x = 0;
    double value = 1.0;
    std::vector<std::uint64_t> zero_primes;
};

KappaEstimate kappa_partial(const TraceSeries& series, std::uint64_t x);

struct CensusBlock {
    std::uint64_t lo;  // block is [lo, hi)
    std::uint64_t hi;
    std::uint64_t good_primes;
    std::uint64_t zero_traces;
};

struct SupersingularCensus {
    std::vector<CensusBlock> blocks;  // dyadic
    std::uint64_t good_primes = 0;
    std::uint64_t zero_traces = 0;
    double density = 0.0;  // zero_traces / good_primes, 0 when empty
};

SupersingularCensus supersingular_census(const TraceSeries& series);

}  // namespace satotate
