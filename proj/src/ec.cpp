#include "satotate/ec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "satotate/errors.hpp"
#include "satotate/parallel.hpp"

namespace satotate {

CurveSpec::CurveSpec(std::int64_t a4, std::int64_t a6) : a4_(a4), a6_(a6) {
    const mpz_class a(static_cast<long>(a4));
    const mpz_class b(static_cast<long>(a6));
    disc_ = -16 * (4 * a * a * a + 27 * b * b);
    if (disc_ == 0) {
        throw InputError("singular curve: y^2 = x^3 + " + std::to_string(a4) + "x + " +
                         std::to_string(a6));
    }
}

bool CurveSpec::is_bad_prime(std::uint64_t p) const {
    return mpz_fdiv_ui(disc_.get_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

std::int64_t trace_by_enumeration(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t points = 1;  // infinity
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t rhs = (x * x * x + a * x + b) % p;
        for (std::uint64_t y = 0; y < p; ++y) {
            if (y * y % p == rhs) ++points;
        }
    }
    return static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(points);
}

// -sum_x chi(x^3 + a x + b); the cubic is walked by finite differences.
std::int64_t trace_by_legendre_sweep(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::vector<std::int8_t> chi(p, -1);
    chi[0] = 0;
    std::uint64_t sq = 0;
    for (std::uint64_t y = 1; y <= p / 2; ++y) {
        sq += 2 * y - 1;  // y^2
        if (sq >= p) sq %= p;
        chi[sq] = 1;
    }
    auto add = [p](std::uint64_t u, std::uint64_t v) {
        const std::uint64_t s = u + v;
        return s >= p ? s - p : s;
    };
    std::uint64_t f = b;                    // f(0)
    std::uint64_t d1 = (1 + a) % p;         // f(1) - f(0)
    std::uint64_t d2 = 6 % p;               // second difference at 0
    const std::uint64_t d3 = 6 % p;
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        sum += chi[f];
        f = add(f, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
    return -sum;
}

}  // namespace

std::int64_t trace_at_prime(const CurveSpec& curve, std::uint64_t p) {
    if (!is_prime_u64(p)) throw InputError(std::to_string(p) + " is not prime");
    if (p > kTraceSweepLimit) {
        throw CapacityError("trace_at_prime: p = " + std::to_string(p) + " above sweep limit");
    }
    const std::uint64_t a = reduce_signed(curve.a4(), p);
    const std::uint64_t b = reduce_signed(curve.a6(), p);
    const std::int64_t t = p <= 3 ? trace_by_enumeration(a, b, p) : trace_by_legendre_sweep(a, b, p);
    if (!curve.is_bad_prime(p) && static_cast<double>(t) * static_cast<double>(t) > 4.0 * static_cast<double>(p)) {
        throw DataCorruptionError("Hasse bound violated at p = " + std::to_string(p));
    }
    return t;
}

TraceSeries trace_series(const CurveSpec& curve, std::uint64_t limit, std::uint64_t budget) {
    if (limit > budget) {
        throw CapacityError("trace series limit " + std::to_string(limit) + " exceeds budget " +
                            std::to_string(budget));
    }
    TraceSeries out;
    out.limit = limit;
    out.curve = curve;
    if (limit < 2) return out;
    const SpfSieve sieve = build_spf_sieve(limit);
    const auto primes = sieve.primes();
    out.records.resize(primes.size());
    // Large primes first would balance better; chunk of 1 keeps it simple.
    parallel_for(0, primes.size(), [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        out.records[i] = {p, trace_at_prime(curve, p), !curve.is_bad_prime(p)};
    });
    return out;
}

TraceSeries trace_series_from_tau(const ExactTauTable& table) {
    TraceSeries out;
    out.limit = table.limit;
    if (table.limit < 2) return out;
    const SpfSieve sieve = build_spf_sieve(table.limit);
    for (std::uint32_t p : sieve.primes()) {
        const mpz_class& t = table.taus[p];
        // Only the sign pattern and zeros matter downstream; clamp to int64.
        const std::int64_t v = t.fits_slong_p() ? t.get_si() : (sgn(t) > 0 ? INT64_MAX : INT64_MIN);
        out.records.push_back({p, v, true});
    }
    return out;
}

NormalizedSequence ec_normalized_sequence(const TraceSeries& series, const SpfSieve& sieve,
                                          std::uint64_t limit) {
    if (series.limit < limit) {
        throw IncompleteInputError("trace series covers primes up to " + std::to_string(series.limit) +
                                   " but the sequence needs " + std::to_string(limit));
    }
    std::vector<double> normalized(limit + 1, 0.0);
    std::vector<std::uint8_t> good(limit + 1, 0);
    for (const auto& r : series.records) {
        if (r.p > limit) break;
        normalized[r.p] = static_cast<double>(r.t) / std::sqrt(static_cast<double>(r.p));
        good[r.p] = r.good ? 1 : 0;
    }
    return assemble_from_prime_powers(sieve, limit, SequenceSource::Elliptic,
                                      [&](std::uint64_t p, unsigned k) {
                                          const double ap = normalized[p];
                                          if (!good[p]) return std::pow(ap, static_cast<int>(k));
                                          double prev = 1.0;
                                          double cur = ap;
                                          for (unsigned j = 1; j < k; ++j) {
                                              const double next = ap * cur - prev;
                                              prev = cur;
                                              cur = next;
                                          }
                                          return cur;
                                      });
}

AngleSeries ec_angles(const TraceSeries& series) {
    AngleSeries out;
    out.limit = series.limit;
    for (const auto& r : series.records) {
        if (!r.good) continue;
        const double ratio =
            std::clamp(static_cast<double>(r.t) / (2.0 * std::sqrt(static_cast<double>(r.p))), -1.0, 1.0);
        out.records.push_back({r.p, 2.0 * ratio, std::acos(ratio)});
    }
    return out;
}

KappaEstimate kappa_partial(const TraceSeries& series, std::uint64_t x) {
    if (x > series.limit) {
        throw RangeError("kappa cutoff " + std::to_string(x) + " beyond series limit");
    }
    KappaEstimate est;
    est.x = x;
    for (const auto& r : series.records) {
        if (r.p > x) break;
        if (r.t == 0) {
            est.zero_primes.push_back(r.p);
            est.value *= 1.0 - 1.0 / static_cast<double>(r.p);
        }
    }
    return est;
}

SupersingularCensus supersingular_census(const TraceSeries& series) {
    SupersingularCensus census;
    for (const auto& r : series.records) {
        if (!r.good) continue;
        const auto j = static_cast<unsigned>(std::bit_width(r.p) - 1);
        const std::uint64_t lo = std::uint64_t{1} << j;
        if (census.blocks.empty() || census.blocks.back().lo != lo) {
            census.blocks.push_back({lo, lo << 1, 0, 0});
        }
        ++census.blocks.back().good_primes;
        ++census.good_primes;
        if (r.t == 0) {
            ++census.blocks.back().zero_traces;
            ++census.zero_traces;
        }
    }
    if (census.good_primes > 0) {
        census.density = static_cast<double>(census.zero_traces) / static_cast<double>(census.good_primes);
    }
    return census;
}

}  // namespace satotate
