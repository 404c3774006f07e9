#include "satotate/tau.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "satotate/errors.hpp"
#include "satotate/ntt.hpp"
#include "satotate/parallel.hpp"

namespace satotate {

std::vector<std::uint64_t> default_ntt_primes() {
    return {4611686018326724609ULL, 4611686018309947393ULL, 4611686018058289153ULL,
            4611686017974403073ULL};
}

namespace {

// Largest K with K(K+1)/2 <= bound.
std::uint64_t triangular_index(std::uint64_t bound) {
    auto k = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(bound) + 1.0) - 1.0) / 2.0);
    while ((k + 1) * (k + 2) / 2 <= bound) ++k;
    while (k > 0 && k * (k + 1) / 2 > bound) --k;
    return k;
}

mpz_class coefficient_bound(std::uint64_t limit) {
    // L1 norm of the truncated seed is sum_{k<=K} (2k+1) = (K+1)^2.
    const std::uint64_t k = triangular_index(limit - 1);
    mpz_class l1 = mpz_class(k + 1) * mpz_class(k + 1);
    mpz_class bound;
    mpz_pow_ui(bound.get_mpz_t(), l1.get_mpz_t(), 8);
    return bound;
}

std::size_t primes_needed(const TauConfig& config) {
    const mpz_class need = 2 * coefficient_bound(config.limit);
    mpz_class modulus = 1;
    for (std::size_t i = 0; i < config.ntt_primes.size(); ++i) {
        modulus *= mpz_class(static_cast<unsigned long>(config.ntt_primes[i]));
        if (modulus > need) return i + 1;
    }
    throw ConfigError("CRT modulus of " + std::to_string(config.ntt_primes.size()) +
                      " primes is too small for limit " + std::to_string(config.limit) + " (needs " +
                      std::to_string(required_crt_bits(config.limit)) + " bits)");
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    mpz_class r;
    const mpz_class am(static_cast<unsigned long>(a));
    const mpz_class mm(static_cast<unsigned long>(m));
    mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

}  // namespace

unsigned required_crt_bits(std::uint64_t limit) {
    if (limit == 0) return 1;
    const mpz_class need = 2 * coefficient_bound(limit) + 1;
    return static_cast<unsigned>(mpz_sizeinbase(need.get_mpz_t(), 2));
}

void validate_tau_config(const TauConfig& config) {
    if (config.limit == 0) throw ConfigError("tau limit must be at least 1");
    if (config.ntt_primes.empty()) throw ConfigError("no NTT primes configured");
    const std::size_t size = std::bit_ceil(2 * config.limit - 1);
    const auto log_size = static_cast<unsigned>(std::countr_zero(size));
    std::set<std::uint64_t> seen;
    for (std::uint64_t p : config.ntt_primes) {
        if (!seen.insert(p).second) throw ConfigError("duplicate NTT prime " + std::to_string(p));
        if (p >= (std::uint64_t{1} << 62) || !is_prime_u64(p)) {
            throw ConfigError("NTT modulus " + std::to_string(p) + " is not a prime below 2^62");
        }
        if (ntt::two_adicity(p) < log_size) {
            throw ConfigError("NTT prime " + std::to_string(p) + " lacks 2^" + std::to_string(log_size) +
                              " roots of unity for limit " + std::to_string(config.limit));
        }
    }
    primes_needed(config);
}

ExactTauTable expand_delta(const TauConfig& config) {
    validate_tau_config(config);
    const std::uint64_t n = config.limit;
    const std::size_t used = primes_needed(config);
    const std::vector<std::uint64_t> primes(config.ntt_primes.begin(),
                                            config.ntt_primes.begin() + static_cast<long>(used));

    // Residues of (eta^3)^8 truncated to n terms; Delta/q has tau(m) at index m - 1.
    std::vector<std::vector<std::uint64_t>> residues(used);
    parallel_for(0, used, [&](std::size_t i) {
        const std::uint64_t p = primes[i];
        std::vector<std::uint64_t> series(n, 0);
        for (std::uint64_t k = 0; k * (k + 1) / 2 < n; ++k) {
            const std::uint64_t c = 2 * k + 1;
            series[k * (k + 1) / 2] = (k % 2 == 0) ? c : p - c;
        }
        for (int s = 0; s < 3; ++s) ntt::square_truncated(series, p);
        residues[i] = std::move(series);
    });

    // Garner mixed-radix digits, then a symmetric lift into (-M/2, M/2].
    std::vector<std::vector<std::uint64_t>> inv(used, std::vector<std::uint64_t>(used, 0));
    for (std::size_t i = 0; i < used; ++i) {
        for (std::size_t j = 0; j < i; ++j) inv[i][j] = inverse_mod(primes[j] % primes[i], primes[i]);
    }
    mpz_class modulus = 1;
    for (std::uint64_t p : primes) modulus *= mpz_class(static_cast<unsigned long>(p));
    const mpz_class half = modulus / 2;

    ExactTauTable table;
    table.limit = n;
    table.taus.assign(n + 1, mpz_class(0));
    parallel_for_chunks(0, n, 4096, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::uint64_t> digit(used);
        mpz_class value;
        for (std::size_t idx = lo; idx < hi; ++idx) {
            for (std::size_t i = 0; i < used; ++i) {
                const std::uint64_t m = primes[i];
                std::uint64_t v = residues[i][idx];
                for (std::size_t j = 0; j < i; ++j) {
                    const std::uint64_t d = digit[j] % m;
                    v = v >= d ? v - d : v + m - d;
                    v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * inv[i][j] % m);
                }
                digit[i] = v;
            }
            value = static_cast<unsigned long>(digit[used - 1]);
            for (std::size_t i = used - 1; i-- > 0;) {
                value *= static_cast<unsigned long>(primes[i]);
                value += static_cast<unsigned long>(digit[i]);
            }
            if (value > half) value -= modulus;
            table.taus[idx + 1] = value;
        }
    });

    if (config.verify_small) {
        const std::uint64_t check = std::min<std::uint64_t>(n, 500);
        const ExactTauTable oracle = tau_naive_oracle(check);
        for (std::uint64_t m = 1; m <= check; ++m) {
            if (oracle.taus[m] != table.taus[m]) {
                throw DataCorruptionError("expand_delta disagrees with naive product at n = " +
                                          std::to_string(m));
            }
        }
    }
    return table;
}

ExactTauTable tau_naive_oracle(std::uint64_t limit) {
    if (limit == 0) throw InputError("oracle limit must be at least 1");
    if (limit > kNaiveOracleLimit) {
        throw CapacityError("naive tau oracle refuses limit " + std::to_string(limit) + " > " +
                            std::to_string(kNaiveOracleLimit));
    }
    std::vector<mpz_class> c(limit, mpz_class(0));
    c[0] = 1;
    for (std::uint64_t k = 1; k < limit; ++k) {
        for (int rep = 0; rep < 24; ++rep) {
            for (std::uint64_t m = limit - 1; m >= k; --m) c[m] -= c[m - k];
        }
    }
    ExactTauTable table;
    table.limit = limit;
    table.taus.assign(limit + 1, mpz_class(0));
    for (std::uint64_t m = 1; m <= limit; ++m) table.taus[m] = c[m - 1];
    return table;
}

NormalizedSequence normalize_tau(const ExactTauTable& table) {
    if (table.limit == 0) throw InputError("empty tau table");
    NormalizedSequence seq;
    seq.limit = table.limit;
    seq.source = SequenceSource::Tau;
    seq.values.assign(table.limit + 1, 0.0);
    parallel_for_chunks(1, table.limit + 1, kDefaultChunk, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            const double scale = std::pow(static_cast<double>(n), 5.5);
            seq.values[n] = table.taus[n].get_d() / scale;
        }
    });
    return seq;
}

AngleSeries tau_angles(const ExactTauTable& table) {
    if (table.limit < 2) throw InputError("tau_angles needs limit >= 2");
    const SpfSieve sieve = build_spf_sieve(table.limit);
    AngleSeries out;
    out.limit = table.limit;
    out.records.resize(sieve.primes().size());
    parallel_for_chunks(0, sieve.primes().size(), 1024, [&](std::size_t lo, std::size_t hi) {
        mpz_class bound;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t p = sieve.primes()[i];
            const mpz_class& t = table.taus[p];
            mpz_ui_pow_ui(bound.get_mpz_t(), p, 11);
            bound *= 4;
            if (t * t > bound) {
                throw DataCorruptionError("Deligne bound violated at p = " + std::to_string(p));
            }
            const double ratio = std::clamp(
                t.get_d() / (2.0 * std::pow(static_cast<double>(p), 5.5)), -1.0, 1.0);
            out.records[i] = {p, 2.0 * ratio, std::acos(ratio)};
        }
    });
    return out;
}

VerificationReport integrity_check(const ExactTauTable& table) {
    constexpr std::uint64_t kExhaustiveLimit = 100'000;
    constexpr std::size_t kSampledPairs = 1'000'000;
    VerificationReport report;
    report.name = "tau-integrity";
    report.add_parameter("limit", std::to_string(table.limit));
    const std::uint64_t n_max = table.limit;

    std::uint64_t pairs = 0;
    std::uint64_t mult_failures = 0;
    std::uint64_t bound_failures = 0;
    std::uint64_t congruence_failures = 0;
    const bool sampled = n_max > kExhaustiveLimit;

    if (n_max >= 1 && table.taus[1] != 1) {
        ++mult_failures;
    }
    if (n_max >= 2) {
        const SpfSieve sieve = build_spf_sieve(n_max);
        const auto spf = sieve.table();
        // d(n) and sigma_11(n) mod 691, assembled multiplicatively.
        std::vector<std::uint32_t> divisors(n_max + 1, 1);
        std::vector<std::uint32_t> sigma(n_max + 1, 1);
        for (std::uint64_t n = 2; n <= n_max; ++n) {
            const std::uint64_t p = spf[n];
            std::uint64_t m = n;
            unsigned k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            const std::uint64_t p11 = [&] {
                std::uint64_t r = 1;
                for (int i = 0; i < 11; ++i) r = r * (p % 691) % 691;
                return r;
            }();
            std::uint64_t s = 1;
            std::uint64_t term = 1;
            for (unsigned i = 0; i < k; ++i) {
                term = term * p11 % 691;
                s = (s + term) % 691;
            }
            divisors[n] = divisors[m] * (k + 1);
            sigma[n] = static_cast<std::uint32_t>(sigma[m] * s % 691);
        }

        const std::size_t chunk = 8192;
        const std::size_t chunks = (n_max + chunk) / chunk;
        std::vector<std::uint64_t> bf(chunks, 0);
        std::vector<std::uint64_t> cf(chunks, 0);
        parallel_for_chunks(1, n_max + 1, chunk, [&](std::size_t lo, std::size_t hi) {
            mpz_class rhs;
            std::uint64_t b = 0;
            std::uint64_t c = 0;
            for (std::size_t n = lo; n < hi; ++n) {
                const mpz_class& t = table.taus[n];
                mpz_ui_pow_ui(rhs.get_mpz_t(), n, 11);
                rhs *= static_cast<unsigned long>(divisors[n]) * divisors[n];
                if (t * t > rhs) ++b;
                if (mpz_fdiv_ui(t.get_mpz_t(), 691) != sigma[n] % 691) ++c;
            }
            bf[(lo - 1) / chunk] = b;
            cf[(lo - 1) / chunk] = c;
        });
        for (std::size_t i = 0; i < chunks; ++i) {
            bound_failures += bf[i];
            congruence_failures += cf[i];
        }

        auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
            return table.taus[a * b] == table.taus[a] * table.taus[b];
        };
        if (!sampled) {
            const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max)));
            std::vector<std::uint64_t> per(root + 2, 0);
            std::vector<std::uint64_t> cnt(root + 2, 0);
            parallel_for(2, root + 2, [&](std::size_t a) {
                for (std::uint64_t b = a + 1; a * b <= n_max; ++b) {
                    if (std::gcd(a, b) != 1) continue;
                    ++cnt[a];
                    if (!check_pair(a, b)) ++per[a];
                }
            });
            for (std::size_t a = 0; a < per.size(); ++a) {
                mult_failures += per[a];
                pairs += cnt[a];
            }
        } else {
            std::mt19937_64 rng(0x5eedULL);
            const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max)));
            while (pairs < kSampledPairs) {
                const std::uint64_t a = 2 + rng() % (root - 1);
                const std::uint64_t hi_b = n_max / a;
                if (hi_b <= a) continue;
                const std::uint64_t b = a + 1 + rng() % (hi_b - a);
                if (std::gcd(a, b) != 1) continue;
                ++pairs;
                if (!check_pair(a, b)) ++mult_failures;
            }
        }
    }

    ReportTable t{"integrity",
                  {"limit", "pairs_checked", "multiplicativity_failures", "divisor_bound_failures",
                   "congruence_691_failures", "sampled"},
                  {}};
    t.add_row({static_cast<double>(n_max), static_cast<double>(pairs), static_cast<double>(mult_failures),
               static_cast<double>(bound_failures), static_cast<double>(congruence_failures),
               sampled ? 1.0 : 0.0});
    report.tables.push_back(std::move(t));
    report.add_flag("multiplicativity_failures", static_cast<double>(mult_failures), Comparator::LessEqual, 0);
    report.add_flag("divisor_bound_failures", static_cast<double>(bound_failures), Comparator::LessEqual, 0);
    report.add_flag("congruence_691_failures", static_cast<double>(congruence_failures),
                    Comparator::LessEqual, 0);
    return report;
}

}  // namespace satotate
