#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "satotate/arith.hpp"

namespace satotate {

/// Philox4x32-10 block: 128-bit counter, 64-bit key.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Stream of Sato-Tate angles. Draw `attempt` for prime p uses counter
/// (p_lo, p_hi, attempt_lo, attempt_hi) under key (seed_lo, seed_hi); words
/// 0,1 give the proposal u, words 2,3 the acceptance v, each as 53-bit
/// uniforms in [0, 1). theta = pi u is accepted when v < sin^2(theta).
struct StStream {
    std::uint64_t seed = 0;
};

struct StDraw {
    double theta;
    std::uint64_t attempts;  // proposals consumed, >= 1
};

StDraw sample_st_angle(const StStream& stream, std::uint64_t p);

struct SyntheticSpec {
    std::uint64_t limit = 1;
    std::uint64_t seed = 0;
    PrimePowerRule rule{};
};

struct SyntheticResult {
    AngleSeries angles;
    NormalizedSequence sequence;
    std::vector<GrowthViolation> growth_violations;  // k up to kGrowthCheckExponent
    std::uint64_t proposals = 0;
};

inline constexpr unsigned kGrowthCheckExponent = 8;

SyntheticResult build_synthetic_sequence(const SyntheticSpec& spec, const SpfSieve& sieve);

}  // namespace satotate
