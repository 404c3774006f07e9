#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "satotate/arith.hpp"
#include "satotate/errors.hpp"

using namespace satotate;

namespace {

bool trial_division_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint64_t brute_spf(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return d;
    }
    return n;
}

AngleSeries constant_angles(const SpfSieve& sieve, std::uint64_t limit, double theta) {
    AngleSeries a;
    a.limit = limit;
    for (auto p : sieve.primes()) {
        if (p > limit) break;
        a.records.push_back({p, 2 * std::cos(theta), theta});
    }
    return a;
}

}  // namespace

TEST_CASE("spf sieve small tables") {
    const SpfSieve s = build_spf_sieve(10);
    const std::vector<std::uint32_t> expected{2, 3, 2, 5, 2, 7, 2, 3, 2};
    for (std::uint64_t n = 2; n <= 10; ++n) CHECK(s.spf(n) == expected[n - 2]);
    CHECK(build_spf_sieve(2).spf(2) == 2);
    CHECK(s.primes().size() == 4);
}

TEST_CASE("spf sieve matches brute force") {
    const SpfSieve s = build_spf_sieve(20000);
    for (std::uint64_t n = 2; n <= 20000; ++n) {
        REQUIRE(s.spf(n) == brute_spf(n));
        REQUIRE(s.is_prime(n) == trial_division_prime(n));
    }
}

TEST_CASE("spf sieve capacity errors") {
    CHECK_THROWS_AS(build_spf_sieve(1), CapacityError);
    CHECK_THROWS_AS(build_spf_sieve((std::uint64_t{1} << 32) + 1), CapacityError);
    CHECK_THROWS_AS(build_spf_sieve(1'000'000, 1024), CapacityError);
}

TEST_CASE("factorize") {
    const SpfSieve s = build_spf_sieve(10000);
    CHECK(factorize(12, s) == Factorization{{2, 2}, {3, 1}});
    CHECK(factorize(1, s).empty());
    REQUIRE(trial_division_prime(9973));
    CHECK(factorize(9973, s) == Factorization{{9973, 1}});
    CHECK_THROWS_AS(factorize(10001, s), RangeError);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = 1 + rng() % 10000;
        std::uint64_t prod = 1;
        std::uint64_t last = 0;
        for (auto [p, k] : factorize(n, s)) {
            CHECK(p > last);
            CHECK(trial_division_prime(p));
            last = p;
            for (unsigned j = 0; j < k; ++j) prod *= p;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("miller-rabin agrees with trial division") {
    for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime_u64(n) == trial_division_prime(n));
    CHECK(is_prime_u64(4611686018326724609ULL));
    CHECK_FALSE(is_prime_u64(4611686018326724611ULL));
}

TEST_CASE("prime power rules") {
    const PrimePowerRule hecke{RuleKind::HeckeChebyshev, 0.1};
    const PrimePowerRule trunc{RuleKind::TruncateZero, 0.25};
    const PrimePowerRule exact{RuleKind::ExactIntegerHecke, 0.1};
    CHECK(hecke.value(std::numbers::pi / 2, 2) == doctest::Approx(-1.0).epsilon(1e-15));
    // Singular limits.
    for (unsigned k = 1; k <= 6; ++k) {
        CHECK(hecke.value(0.0, k) == doctest::Approx(k + 1.0));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        CHECK(hecke.value(std::numbers::pi, k) == doctest::Approx(sign * (k + 1.0)));
    }
    CHECK(trunc.value(1.0, 1) == doctest::Approx(2 * std::cos(1.0)));
    CHECK(trunc.value(1.0, 2) == 0.0);
    CHECK(trunc.value(1.0, 5) == 0.0);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    for (int i = 0; i < 500; ++i) {
        const double t = u(rng);
        for (unsigned k = 1; k < 12; ++k) {
            const double lhs = hecke.value(t, k + 1);
            const double rhs = 2 * std::cos(t) * hecke.value(t, k) - hecke.value(t, k - 1);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)) + 1e-12);
            CHECK(std::abs(exact.value(t, k) - hecke.value(t, k)) < 1e-9);
        }
    }
    CHECK(parse_rule_kind("truncate-zero") == RuleKind::TruncateZero);
    CHECK_THROWS_AS(parse_rule_kind("nope"), InputError);
}

TEST_CASE("assemble multiplicative") {
    const SpfSieve s = build_spf_sieve(5000);
    const PrimePowerRule hecke{};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
    AngleSeries angles;
    angles.limit = 5000;
    for (auto p : s.primes()) {
        const double t = u(rng);
        angles.records.push_back({p, 2 * std::cos(t), t});
    }
    const auto seq = assemble_multiplicative(angles, hecke, 5000, s);
    CHECK(seq[1] == 1.0);
    const double t2 = angles.records[0].theta;
    const double t3 = angles.records[1].theta;
    CHECK(seq[12] == doctest::Approx(hecke.value(t2, 2) * hecke.value(t3, 1)).epsilon(1e-12));
    for (const auto& r : angles.records) {
        CHECK(seq[r.p] == doctest::Approx(2 * std::cos(r.theta)));
        CHECK(std::abs(seq[r.p]) <= 2.0);
    }
    // Multiplicativity property on random coprime pairs.
    for (int i = 0; i < 3000; ++i) {
        const std::uint64_t m = 1 + rng() % 70;
        const std::uint64_t n = 1 + rng() % (5000 / m);
        if (std::gcd(m, n) != 1) continue;
        const double lhs = seq[m * n];
        const double rhs = seq[m] * seq[n];
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(std::abs(lhs), 1e-300) + 1e-300);
    }
}

TEST_CASE("hecke n = 4 at theta = pi/2") {
    const SpfSieve s = build_spf_sieve(10);
    const auto seq = assemble_multiplicative(constant_angles(s, 10, std::numbers::pi / 2), {}, 10, s);
    CHECK(seq[4] == doctest::Approx(-1.0));
}

TEST_CASE("assemble rejects missing angles") {
    const SpfSieve s = build_spf_sieve(100);
    AngleSeries a = constant_angles(s, 100, 1.0);
    a.records.erase(a.records.begin() + 3);
    CHECK_THROWS_AS(assemble_multiplicative(a, {}, 100, s), IncompleteInputError);
    const auto one = assemble_multiplicative(AngleSeries{}, {}, 1, s);
    CHECK(one.values.size() == 2);
    CHECK(one[1] == 1.0);
}

TEST_CASE("growth violations") {
    const SpfSieve s = build_spf_sieve(100);
    const auto zero = constant_angles(s, 100, 0.0);
    for (double rho : {0.05, 0.25, 0.5}) {
        CHECK(growth_violations({RuleKind::TruncateZero, rho}, zero, 6).empty());
    }
    const auto v = growth_violations({RuleKind::HeckeChebyshev, 0.1}, zero, 2);
    bool has13 = false;
    bool has17 = false;
    for (const auto& g : v) {
        has13 |= (g.p == 13 && g.k == 2);
        has17 |= (g.p == 17 && g.k == 2);
    }
    CHECK(has13);
    CHECK_FALSE(has17);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i - 1].p <= v[i].p);
}
