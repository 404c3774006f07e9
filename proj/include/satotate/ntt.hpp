#pragma once

// Number-theoretic transforms over word-size primes p < 2^62 with Montgomery
// multiplication. Used for exact integer convolution (one residue per prime,
// recombined with CRT by the caller).

#include <cstdint>
#include <span>
#include <vector>

namespace satotate::ntt {

class Montgomery {
  public:
    explicit Montgomery(std::uint64_t modulus);

    std::uint64_t modulus() const { return mod_; }
    std::uint64_t to_mont(std::uint64_t x) const;
    std::uint64_t from_mont(std::uint64_t x) const { return reduce(x); }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return reduce(static_cast<unsigned __int128>(a) * b);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= mod_ ? s - mod_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + mod_ - b; }
    std::uint64_t pow(std::uint64_t base_mont, std::uint64_t e) const;

  private:
    std::uint64_t reduce(unsigned __int128 t) const {
        const std::uint64_t m = static_cast<std::uint64_t>(t) * neg_inv_;
        const unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * mod_) >> 64;
        const auto r = static_cast<std::uint64_t>(u);
        return r >= mod_ ? r - mod_ : r;
    }

    std::uint64_t mod_;
    std::uint64_t neg_inv_;  // -mod^{-1} mod 2^64
    std::uint64_t r2_;       // 2^128 mod mod
};

/// Largest e with 2^e | p - 1.
unsigned two_adicity(std::uint64_t p);

/// In-place squaring of a series truncated to its current length; values are
/// plain residues (not Montgomery form). Requires 2^ceil(log2(2n-1)) | p - 1.
void square_truncated(std::vector<std::uint64_t>& series, std::uint64_t p);

/// Plain O(n^2) reference used by tests.
std::vector<std::uint64_t> square_truncated_naive(std::span<const std::uint64_t> series,
                                                  std::uint64_t p);

}  // namespace satotate::ntt
