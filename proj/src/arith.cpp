#include "satotate/arith.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "satotate/errors.hpp"

namespace satotate {

std::uint32_t SpfSieve::spf(std::uint64_t n) const {
    if (n < 2 || n > limit_) {
        throw RangeError("spf: " + std::to_string(n) + " outside [2, " + std::to_string(limit_) + "]");
    }
    return spf_[n];
}

SpfSieve build_spf_sieve(std::uint64_t limit, std::size_t memory_budget) {
    if (limit < 2) throw CapacityError("sieve limit must be at least 2");
    if (limit > (std::uint64_t{1} << 32)) throw CapacityError("sieve limit exceeds 2^32");
    // spf entries plus a prime list bounded by limit / 4 words for limit >= 100.
    const long double bytes = static_cast<long double>(limit + 1) * sizeof(std::uint32_t) * 1.25L;
    if (bytes > static_cast<long double>(memory_budget)) {
        throw CapacityError("sieve of " + std::to_string(limit) + " exceeds memory budget");
    }
    // Entries are 32-bit; 2^32 itself is even so its spf (2) still fits.
    std::vector<std::uint32_t> spf(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(limit) /
                                            std::log(static_cast<double>(limit) + 2.0)) + 16);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            spf[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t si = spf[i];
        for (std::uint32_t p : primes) {
            if (p > si) break;
            const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
            if (m > limit) break;
            spf[m] = p;
        }
    }
    return SpfSieve(limit, std::move(spf), std::move(primes));
}

Factorization factorize(std::uint64_t n, const SpfSieve& sieve) {
    if (n == 0) throw RangeError("factorize: n must be positive");
    if (n > sieve.limit()) {
        throw RangeError("factorize: " + std::to_string(n) + " exceeds sieve limit " +
                         std::to_string(sieve.limit()));
    }
    Factorization out;
    while (n > 1) {
        const std::uint64_t p = sieve.table()[n];
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    return out;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::string to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::HeckeChebyshev: return "hecke-chebyshev";
        case RuleKind::TruncateZero: return "truncate-zero";
        case RuleKind::ExactIntegerHecke: return "exact-integer-hecke";
    }
    return "unknown";
}

RuleKind parse_rule_kind(const std::string& name) {
    if (name == "hecke-chebyshev" || name == "hecke") return RuleKind::HeckeChebyshev;
    if (name == "truncate-zero" || name == "truncate") return RuleKind::TruncateZero;
    if (name == "exact-integer-hecke") return RuleKind::ExactIntegerHecke;
    throw InputError("unknown prime-power rule '" + name + "'");
}

double PrimePowerRule::value(double theta, unsigned k) const {
    if (k == 0) return 1.0;
    switch (kind) {
        case RuleKind::TruncateZero:
            return k == 1 ? 2.0 * std::cos(theta) : 0.0;
        case RuleKind::ExactIntegerHecke: {
            const double two_cos = 2.0 * std::cos(theta);
            double prev = 1.0;
            double cur = two_cos;
            for (unsigned j = 1; j < k; ++j) {
                const double next = two_cos * cur - prev;
                prev = cur;
                cur = next;
            }
            return cur;
        }
        case RuleKind::HeckeChebyshev: {
            const double s = std::sin(theta);
            if (std::abs(s) < 1e-12) {
                const double kp1 = static_cast<double>(k + 1);
                // theta near pi: U_k(-1) = (-1)^k (k+1)
                return (theta > std::numbers::pi / 2 && (k % 2 == 1)) ? -kp1 : kp1;
            }
            if (k == 1) return 2.0 * std::cos(theta);
            return std::sin(static_cast<double>(k + 1) * theta) / s;
        }
    }
    return 0.0;
}

std::string to_string(SequenceSource source) {
    switch (source) {
        case SequenceSource::Tau: return "tau";
        case SequenceSource::Elliptic: return "elliptic";
        case SequenceSource::Synthetic: return "synthetic";
    }
    return "unknown";
}

SequenceSource parse_source(const std::string& name) {
    if (name == "tau") return SequenceSource::Tau;
    if (name == "elliptic" || name == "ec") return SequenceSource::Elliptic;
    if (name == "synthetic" || name == "synth") return SequenceSource::Synthetic;
    throw InputError("unknown sequence source '" + name + "'");
}

AngleSeries angles_from_thetas(std::uint64_t limit, std::span<const std::uint32_t> primes,
                               std::span<const double> thetas) {
    if (primes.size() != thetas.size()) throw InputError("angles_from_thetas: size mismatch");
    AngleSeries out;
    out.limit = limit;
    out.records.reserve(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        out.records.push_back({primes[i], 2.0 * std::cos(thetas[i]), thetas[i]});
    }
    return out;
}

NormalizedSequence assemble_from_prime_powers(const SpfSieve& sieve, std::uint64_t limit,
                                              SequenceSource source,
                                              const PrimePowerValue& prime_power) {
    if (limit == 0) throw InputError("sequence limit must be positive");
    if (limit > 1 && limit > sieve.limit()) {
        throw RangeError("sequence limit " + std::to_string(limit) + " exceeds sieve limit");
    }
    NormalizedSequence seq;
    seq.limit = limit;
    seq.source = source;
    seq.values.assign(limit + 1, 0.0);
    seq.values[1] = 1.0;
    const auto spf = sieve.table();
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const std::uint64_t p = spf[n];
        std::uint64_t m = n;
        unsigned k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        seq.values[n] = (m == 1) ? prime_power(p, k) : seq.values[n / m] * seq.values[m];
    }
    return seq;
}

NormalizedSequence assemble_multiplicative(const AngleSeries& angles, const PrimePowerRule& rule,
                                           std::uint64_t limit, const SpfSieve& sieve,
                                           SequenceSource source) {
    std::vector<double> theta(limit + 1, std::numeric_limits<double>::quiet_NaN());
    for (const auto& r : angles.records) {
        if (r.p <= limit) theta[r.p] = r.theta;
    }
    if (limit >= 2) {
        for (std::uint32_t p : sieve.primes()) {
            if (p > limit) break;
            if (std::isnan(theta[p])) {
                throw IncompleteInputError("missing angle for prime " + std::to_string(p));
            }
        }
    }
    return assemble_from_prime_powers(sieve, limit, source, [&](std::uint64_t p, unsigned k) {
        return rule.value(theta[p], k);
    });
}

std::vector<GrowthViolation> growth_violations(const PrimePowerRule& rule,
                                               const AngleSeries& angles, unsigned max_exponent) {
    std::vector<GrowthViolation> out;
    for (const auto& r : angles.records) {
        const double logp = std::log(static_cast<double>(r.p));
        for (unsigned k = 2; k <= max_exponent; ++k) {
            const double magnitude = std::abs(rule.value(r.theta, k));
            const double bound = std::exp(((k - 1) / 2.0 - rule.rho) * logp);
            if (magnitude > bound) out.push_back({r.p, k, magnitude, bound});
        }
    }
    return out;
}

}  // namespace satotate
