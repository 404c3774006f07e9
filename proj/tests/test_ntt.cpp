#include <random>

#include "doctest.h"
#include "satotate/errors.hpp"
#include "satotate/ntt.hpp"
#include "satotate/tau.hpp"

using namespace satotate;

TEST_CASE("montgomery arithmetic matches 128-bit reference") {
    for (std::uint64_t p : default_ntt_primes()) {
        const ntt::Montgomery mg(p);
        std::mt19937_64 rng(p);
        for (int i = 0; i < 1000; ++i) {
            const std::uint64_t a = rng() % p;
            const std::uint64_t b = rng() % p;
            const auto expected = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
            CHECK(mg.from_mont(mg.mul(mg.to_mont(a), mg.to_mont(b))) == expected);
        }
        CHECK(ntt::two_adicity(p) >= 23);
    }
}

TEST_CASE("NTT squaring equals schoolbook squaring") {
    const std::uint64_t p = default_ntt_primes()[1];
    std::mt19937_64 rng(5);
    for (std::size_t n : {1u, 2u, 3u, 17u, 64u, 300u}) {
        std::vector<std::uint64_t> a(n);
        for (auto& v : a) v = rng() % p;
        const auto expected = ntt::square_truncated_naive(a, p);
        ntt::square_truncated(a, p);
        CHECK(a == expected);
    }
}

TEST_CASE("NTT rejects primes without enough roots of unity") {
    std::vector<std::uint64_t> a(10, 1);
    // 2^61 - 1 has 2-adicity 1.
    CHECK_THROWS_AS(ntt::square_truncated(a, 2305843009213693951ULL), ConfigError);
}
