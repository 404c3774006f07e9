#include "satotate/synthetic.hpp"

#include <cmath>
#include <numbers>

#include "satotate/errors.hpp"
#include "satotate/parallel.hpp"

namespace satotate {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53;
    constexpr std::uint32_t kM1 = 0xCD9E8D57;
    constexpr std::uint32_t kW0 = 0x9E3779B9;
    constexpr std::uint32_t kW1 = 0xBB67AE85;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

namespace {

double unit53(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
    return static_cast<double>(bits & ((std::uint64_t{1} << 53) - 1)) * 0x1.0p-53;
}

}  // namespace

StDraw sample_st_angle(const StStream& stream, std::uint64_t p) {
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(stream.seed),
                                           static_cast<std::uint32_t>(stream.seed >> 32)};
    for (std::uint64_t attempt = 0;; ++attempt) {
        const auto out = philox4x32({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(p >> 32),
                                     static_cast<std::uint32_t>(attempt),
                                     static_cast<std::uint32_t>(attempt >> 32)},
                                    key);
        const double theta = std::numbers::pi * unit53(out[0], out[1]);
        const double v = unit53(out[2], out[3]);
        const double s = std::sin(theta);
        if (v < s * s) return {theta, attempt + 1};
    }
}

SyntheticResult build_synthetic_sequence(const SyntheticSpec& spec, const SpfSieve& sieve) {
    if (spec.limit == 0) throw InputError("synthetic limit must be positive");
    if (spec.limit > 1 && sieve.limit() < spec.limit) {
        throw RangeError("sieve limit " + std::to_string(sieve.limit()) + " below synthetic limit " +
                         std::to_string(spec.limit));
    }
    SyntheticResult result;
    std::vector<std::uint32_t> primes;
    if (spec.limit >= 2) {
        for (std::uint32_t p : sieve.primes()) {
            if (p > spec.limit) break;
            primes.push_back(p);
        }
    }
    std::vector<double> thetas(primes.size());
    std::vector<std::uint64_t> attempts(primes.size());
    const StStream stream{spec.seed};
    parallel_for_chunks(0, primes.size(), 4096, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const StDraw d = sample_st_angle(stream, primes[i]);
            thetas[i] = d.theta;
            attempts[i] = d.attempts;
        }
    });
    for (auto a : attempts) result.proposals += a;
    result.angles = angles_from_thetas(spec.limit, primes, thetas);
    result.sequence =
        assemble_multiplicative(result.angles, spec.rule, spec.limit, sieve, SequenceSource::Synthetic);
    result.growth_violations = growth_violations(spec.rule, result.angles, kGrowthCheckExponent);
    return result;
}

}  // namespace satotate
