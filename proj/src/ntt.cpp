#include "satotate/ntt.hpp"

#include <bit>
#include <utility>

#include "satotate/arith.hpp"
#include "satotate/errors.hpp"

namespace satotate::ntt {

Montgomery::Montgomery(std::uint64_t modulus) : mod_(modulus) {
    if (modulus % 2 == 0 || modulus >= (std::uint64_t{1} << 62)) {
        throw ConfigError("Montgomery modulus must be odd and below 2^62");
    }
    std::uint64_t inv = modulus;  // Newton iteration for mod^{-1} mod 2^64
    for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
    neg_inv_ = ~inv + 1;
    const unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % modulus;
    r2_ = static_cast<std::uint64_t>(r * r % modulus);
}

std::uint64_t Montgomery::to_mont(std::uint64_t x) const { return mul(x % mod_, r2_); }

std::uint64_t Montgomery::pow(std::uint64_t base, std::uint64_t e) const {
    std::uint64_t r = to_mont(1);
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

unsigned two_adicity(std::uint64_t p) { return static_cast<unsigned>(std::countr_zero(p - 1)); }

namespace {

// Generator of the 2^e-th roots of unity: c^((p-1)/2^e) for a non-residue c.
std::uint64_t root_of_unity(const Montgomery& mg, unsigned log_size) {
    const std::uint64_t p = mg.modulus();
    const std::uint64_t minus_one = mg.to_mont(p - 1);
    for (std::uint64_t c = 2;; ++c) {
        const std::uint64_t cm = mg.to_mont(c);
        if (mg.pow(cm, (p - 1) / 2) == minus_one) {
            std::uint64_t w = mg.pow(cm, (p - 1) >> two_adicity(p));
            for (unsigned i = log_size; i < two_adicity(p); ++i) w = mg.mul(w, w);
            return w;
        }
    }
}

void transform(std::vector<std::uint64_t>& a, const Montgomery& mg, std::uint64_t root, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<std::uint64_t> twiddle(n / 2 + 1);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        // root has order n; step to order len.
        std::uint64_t w = root;
        for (std::size_t s = len; s < n; s <<= 1) w = mg.mul(w, w);
        if (inverse) w = mg.pow(w, len - 1);
        const std::size_t half = len / 2;
        twiddle[0] = mg.to_mont(1);
        for (std::size_t k = 1; k < half; ++k) twiddle[k] = mg.mul(twiddle[k - 1], w);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::uint64_t u = a[i + k];
                const std::uint64_t v = mg.mul(a[i + k + half], twiddle[k]);
                a[i + k] = mg.add(u, v);
                a[i + k + half] = mg.sub(u, v);
            }
        }
    }
}

}  // namespace

void square_truncated(std::vector<std::uint64_t>& series, std::uint64_t p) {
    const std::size_t n = series.size();
    if (n == 0) return;
    const std::size_t size = std::bit_ceil(2 * n - 1);
    const auto log_size = static_cast<unsigned>(std::countr_zero(size));
    if (log_size > two_adicity(p)) {
        throw ConfigError("NTT prime " + std::to_string(p) + " cannot host a transform of size " +
                          std::to_string(size));
    }
    const Montgomery mg(p);
    const std::uint64_t root = root_of_unity(mg, log_size);
    std::vector<std::uint64_t> a(size, 0);
    for (std::size_t i = 0; i < n; ++i) a[i] = mg.to_mont(series[i]);
    transform(a, mg, root, false);
    for (auto& x : a) x = mg.mul(x, x);
    transform(a, mg, root, true);
    const std::uint64_t inv_size = mg.pow(mg.to_mont(size), p - 2);
    for (std::size_t i = 0; i < n; ++i) series[i] = mg.from_mont(mg.mul(a[i], inv_size));
}

std::vector<std::uint64_t> square_truncated_naive(std::span<const std::uint64_t> series,
                                                  std::uint64_t p) {
    std::vector<std::uint64_t> out(series.size(), 0);
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (std::size_t j = 0; i + j < series.size(); ++j) {
            const auto prod = static_cast<unsigned __int128>(series[i]) * series[j] % p;
            out[i + j] = static_cast<std::uint64_t>((out[i + j] + prod) % p);
        }
    }
    return out;
}

}  // namespace satotate::ntt
