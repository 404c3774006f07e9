#include <cmath>
#include <numbers>

#include "doctest.h"
#include "satotate/errors.hpp"
#include "satotate/tau.hpp"

using namespace satotate;

namespace {

// Independent oracle: tau from its prime values through the Hecke recursion
// tau(p^{k+1}) = tau(p) tau(p^k) - p^11 tau(p^{k-1}) and multiplicativity.
ExactTauTable hecke_reconstruct(const ExactTauTable& t) {
    const SpfSieve s = build_spf_sieve(t.limit);
    ExactTauTable out;
    out.limit = t.limit;
    out.taus.assign(t.limit + 1, mpz_class(0));
    out.taus[1] = 1;
    for (std::uint64_t n = 2; n <= t.limit; ++n) {
        std::uint64_t p = s.spf(n);
        std::uint64_t m = n;
        unsigned k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        if (m != 1) {
            out.taus[n] = out.taus[n / m] * out.taus[m];
            continue;
        }
        mpz_class p11;
        mpz_ui_pow_ui(p11.get_mpz_t(), p, 11);
        mpz_class prev = 1;
        mpz_class cur = t.taus[p];
        for (unsigned j = 1; j < k; ++j) {
            mpz_class next = t.taus[p] * cur - p11 * prev;
            prev = cur;
            cur = next;
        }
        out.taus[n] = cur;
    }
    return out;
}

}  // namespace

TEST_CASE("naive oracle first values") {
    const auto t = tau_naive_oracle(6);
    CHECK(t[1] == 1);
    CHECK(t[2] == -24);
    CHECK(t[3] == 252);
    CHECK(t[4] == -1472);
    CHECK(t[5] == 4830);
    CHECK(t[6] == -6048);
    CHECK(tau_naive_oracle(1).taus.size() == 2);
    CHECK_THROWS_AS(tau_naive_oracle(kNaiveOracleLimit + 1), CapacityError);
}

TEST_CASE("expand_delta matches the naive oracle") {
    for (std::uint64_t n : {1u, 2u, 5u, 37u, 300u, 2000u}) {
        const auto fast = expand_delta(TauConfig{n});
        const auto slow = tau_naive_oracle(n);
        CHECK(fast == slow);
    }
    TauConfig cfg{700};
    cfg.verify_small = true;
    CHECK_NOTHROW(expand_delta(cfg));
}

TEST_CASE("expand_delta agrees with Hecke reconstruction") {
    const auto t = expand_delta(TauConfig{30000});
    CHECK(hecke_reconstruct(t) == t);
    CHECK(t[6] == t[2] * t[3]);
}

TEST_CASE("tau config validation") {
    TauConfig one_prime{1'000'000, {default_ntt_primes()[0]}, false};
    CHECK_THROWS_AS(validate_tau_config(one_prime), ConfigError);
    TauConfig composite{100, {4611686018326724611ULL}, false};
    CHECK_THROWS_AS(validate_tau_config(composite), ConfigError);
    TauConfig shallow{100000, {2305843009213693951ULL, 4611686018326724609ULL, 4611686018309947393ULL}, false};
    CHECK_THROWS_AS(validate_tau_config(shallow), ConfigError);
    CHECK_THROWS_AS(expand_delta(TauConfig{10'000'000}), ConfigError);
    CHECK(required_crt_bits(1'000'000) <= 186);
    CHECK_NOTHROW(validate_tau_config(TauConfig{1'000'000}));
}

TEST_CASE("normalize and angles") {
    const auto t = expand_delta(TauConfig{2000});
    const auto seq = normalize_tau(t);
    CHECK(seq.source == SequenceSource::Tau);
    CHECK(seq[1] == 1.0);
    CHECK(seq[2] == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-14));
    CHECK(seq[2] == doctest::Approx(-0.530330).epsilon(1e-6));
    const auto angles = tau_angles(t);
    CHECK(angles.records.size() == 303);  // pi(2000)
    CHECK(angles.records[0].p == 2);
    CHECK(angles.records[0].theta == doctest::Approx(std::acos(-0.265165)).epsilon(1e-5));
    CHECK(angles.records[0].theta == doctest::Approx(1.839).epsilon(1e-3));
    for (const auto& r : angles.records) {
        CHECK(std::abs(seq[r.p]) <= 2.0);
        CHECK(r.theta >= 0.0);
        CHECK(r.theta <= std::numbers::pi);
    }
}

TEST_CASE("tau_angles handles zero and corruption") {
    ExactTauTable t = expand_delta(TauConfig{10});
    t.taus[3] = 0;
    CHECK(tau_angles(t).records[1].theta == doctest::Approx(std::numbers::pi / 2));
    t.taus[5] = mpz_class("100000000000");
    CHECK_THROWS_AS(tau_angles(t), DataCorruptionError);
}

TEST_CASE("integrity check") {
    const auto t = expand_delta(TauConfig{100});
    const auto report = integrity_check(t);
    CHECK(report.passed());
    CHECK(report.at("integrity", 0, "pairs_checked") > 0);
    // tau(2) = -24 = 667 = sigma_11(2) = 2049 (mod 691)
    CHECK(((-24 % 691) + 691) % 691 == 2049 % 691);

    ExactTauTable bad = t;
    bad.taus[6] = 0;
    const auto r2 = integrity_check(bad);
    CHECK(r2.at("integrity", 0, "multiplicativity_failures") >= 1);
    CHECK_FALSE(r2.passed());
}
