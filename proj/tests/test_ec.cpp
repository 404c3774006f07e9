#include <cmath>

#include "doctest.h"
#include "satotate/ec.hpp"
#include "satotate/errors.hpp"
#include "satotate/parallel.hpp"

using namespace satotate;

namespace {

// Projective point count by brute force over F_p x F_p.
std::int64_t enumerate_trace(std::int64_t a, std::int64_t b, std::int64_t p) {
    auto mod = [p](std::int64_t v) { return ((v % p) + p) % p; };
    std::int64_t points = 1;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t rhs = mod(mod(x * x % p * x) + mod(a) * x + mod(b));
        for (std::int64_t y = 0; y < p; ++y) {
            if (y * y % p == rhs) ++points;
        }
    }
    return p + 1 - points;
}

}  // namespace

TEST_CASE("curve spec") {
    const CurveSpec c(1, 1);
    CHECK(c.discriminant() == -16 * 31);
    CHECK(c.is_bad_prime(2));
    CHECK(c.is_bad_prime(31));
    CHECK_FALSE(c.is_bad_prime(5));
    CHECK_THROWS_AS(CurveSpec(0, 0), InputError);
    CHECK_THROWS_AS(CurveSpec(-3, 2), InputError);  // 4(-27) + 27*4 = 0
}

TEST_CASE("trace at prime examples") {
    CHECK(enumerate_trace(1, 1, 5) == -3);
    CHECK(trace_at_prime(CurveSpec(1, 1), 5) == -3);
    CHECK(trace_at_prime(CurveSpec(0, 1), 5) == 0);
    CHECK_THROWS_AS(trace_at_prime(CurveSpec(1, 1), 9), InputError);
    CHECK_THROWS_AS(trace_at_prime(CurveSpec(1, 1), 10'000'019), CapacityError);
}

TEST_CASE("legendre sweep matches enumeration") {
    for (auto [a, b] : {std::pair{1, 1}, {0, 1}, {-1, 1}, {2, -3}, {-7, 10}, {5, 0}}) {
        const CurveSpec c(a, b);
        for (std::uint64_t p = 2; p < 400; ++p) {
            if (!is_prime_u64(p)) continue;
            const auto t = trace_at_prime(c, p);
            REQUIRE(t == enumerate_trace(a, b, static_cast<std::int64_t>(p)));
            if (c.is_bad_prime(p)) {
                CHECK(std::abs(t) <= 1);
            } else {
                CHECK(t * t <= 4 * static_cast<std::int64_t>(p));
            }
        }
    }
}

TEST_CASE("trace series") {
    const CurveSpec cm(0, 1);
    const auto s = trace_series(cm, 10);
    CHECK(s.records.size() == 4);
    const auto big = trace_series(cm, 100);
    for (const auto& r : big.records) {
        CHECK(r.t == enumerate_trace(0, 1, static_cast<std::int64_t>(r.p)));
        if (r.good && r.p % 3 == 2) CHECK(r.t == 0);
    }
    CHECK_THROWS_AS(trace_series(cm, 2'000'000), CapacityError);

    set_thread_count(1);
    const auto one = trace_series(CurveSpec(-1, 1), 3000);
    set_thread_count(4);
    const auto four = trace_series(CurveSpec(-1, 1), 3000);
    set_thread_count(0);
    CHECK(one == four);
}

TEST_CASE("kappa partial") {
    const CurveSpec cm(0, 1);
    const auto s = trace_series(cm, 100);
    const auto k = kappa_partial(s, 20);
    // p = 3 is bad and its enumerated trace is 0 as well.
    CHECK(k.zero_primes == std::vector<std::uint64_t>{2, 3, 5, 11, 17});
    const double expected = (1 - 1 / 2.0) * (1 - 1 / 3.0) * (1 - 1 / 5.0) * (1 - 1 / 11.0) * (1 - 1 / 17.0);
    CHECK(std::abs(k.value - expected) < 1e-12);
    CHECK(k.value == doctest::Approx(0.228164).epsilon(1e-5));
    double prev = 1.0;
    for (std::uint64_t x = 2; x <= 100; ++x) {
        const double v = kappa_partial(s, x).value;
        CHECK(v <= prev);
        CHECK(v > 0.0);
        prev = v;
    }
    TraceSeries none;
    none.limit = 10;
    none.records = {{2, 1, true}, {3, -1, true}};
    CHECK(kappa_partial(none, 10).value == 1.0);
    CHECK_THROWS_AS(kappa_partial(s, 101), RangeError);
}

TEST_CASE("normalized elliptic sequence") {
    const CurveSpec c(-1, 1);
    const auto s = trace_series(c, 2000);
    const SpfSieve sieve = build_spf_sieve(2000);
    const auto seq = ec_normalized_sequence(s, sieve, 2000);
    CHECK(seq.source == SequenceSource::Elliptic);
    CHECK(seq[1] == 1.0);
    for (const auto& r : s.records) {
        CHECK(seq[r.p] == doctest::Approx(r.t / std::sqrt(double(r.p))));
        if (r.good && r.p * r.p <= 2000) {
            CHECK(seq[r.p * r.p] == doctest::Approx(seq[r.p] * seq[r.p] - 1.0));
        }
        if (!r.good && r.p * r.p <= 2000) {
            CHECK(seq[r.p * r.p] == doctest::Approx(seq[r.p] * seq[r.p]));
        }
    }
    CHECK(seq[15] == doctest::Approx(seq[3] * seq[5]));
    // Normalized values are the Dirichlet coefficients of L(E, s + 1/2): a_{p^2} sqrt(p^2) = t_p^2 - p.
    const auto t5 = trace_at_prime(c, 5);
    CHECK(seq[25] * 5.0 == doctest::Approx(double(t5 * t5 - 5)));
    CHECK_THROWS_AS(ec_normalized_sequence(s, build_spf_sieve(3000), 3000), IncompleteInputError);
}

TEST_CASE("supersingular census") {
    const auto cm = trace_series(CurveSpec(0, 1), 20000);
    const auto c = supersingular_census(cm);
    CHECK(c.density == doctest::Approx(0.5).epsilon(0.03));
    std::uint64_t total = 0;
    for (const auto& b : c.blocks) total += b.good_primes;
    CHECK(total == c.good_primes);
    CHECK(supersingular_census(TraceSeries{}).good_primes == 0);
    CHECK(supersingular_census(TraceSeries{}).zero_traces == 0);

    const auto tau = trace_series_from_tau(expand_delta(TauConfig{5000}));
    CHECK(supersingular_census(tau).zero_traces == 0);
    const auto angles = ec_angles(trace_series(CurveSpec(-1, 1), 1000));
    for (const auto& r : angles.records) CHECK(r.p != 2);
}
