#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "satotate/arith.hpp"
#include "satotate/report.hpp"

namespace satotate {

/// Strictly increasing cutoffs, each <= the sequence limit.
class Checkpoints {
  public:
    Checkpoints() = default;
    /// InputError unless strictly increasing and within [1, limit].
    Checkpoints(std::vector<std::uint64_t> cutoffs, std::uint64_t limit);
    /// Powers of ten below limit, then limit itself.
    static Checkpoints decades(std::uint64_t limit);

    std::span<const std::uint64_t> values() const { return cutoffs_; }
    std::uint64_t back() const { return cutoffs_.back(); }

  private:
    std::vector<std::uint64_t> cutoffs_;
};

enum class SupportMode { All, Nonzero, FloorA };

struct SupportFilter {
    SupportMode mode = SupportMode::Nonzero;
    double A = 2.0;  // FloorA: every p | n has |a_p| > (log_2 x)^{-A}
};

/// membership[n] for 1 <= n <= x. FloorA support is intersected with a_n != 0.
std::vector<std::uint8_t> support_mask(const NormalizedSequence& seq, const SpfSieve& sieve,
                                       std::uint64_t x, const SupportFilter& filter);

enum class Standardization { Asymptotic, FiniteSize, Self };

/// a_p read off a sequence at each prime <= limit, with theta = arccos(a_p / 2).
AngleSeries angles_from_sequence(const NormalizedSequence& seq, const SpfSieve& sieve);

struct Thm1Options {
    double monotone_slack = 0.005;  // allowed rise of the exceedance fraction per checkpoint
};

VerificationReport verify_thm1(const NormalizedSequence& seq, double epsilon,
                               const Checkpoints& checkpoints, const Thm1Options& options = {});

struct Thm2Options {
    std::optional<double> max_ratio;  // flag |S|/T at the last checkpoint
};

VerificationReport verify_thm2(const NormalizedSequence& seq, const SpfSieve& sieve,
                               const Checkpoints& checkpoints, const Thm2Options& options = {});

struct Thm3Options {
    std::optional<double> max_ks;
    std::optional<double> max_abs_skewness;
    double identity_tolerance = 1e-6;
};

/// Standardized log|a_n| over the filtered support, KS against N(0,1),
/// skewness, excess kurtosis, the strongly multiplicative companion h with
/// h(p^k) = a_p (a_p != 0) and the exact identity
///   sum_{n<=x} log|h(n)| = sum_{p<=x, a_p != 0} log|a_p| floor(x/p).
VerificationReport verify_thm3(const NormalizedSequence& seq, const SpfSieve& sieve, std::uint64_t x,
                               const SupportFilter& filter, Standardization standardization,
                               const Thm3Options& options = {});

struct LemmaSumsOptions {
    std::optional<std::pair<double, double>> square_over_n_band;  // for sum |a_n|^2/n / log x
};

VerificationReport verify_lemma_sums(const NormalizedSequence& seq, std::span<const double> gammas,
                                     const Checkpoints& checkpoints,
                                     const LemmaSumsOptions& options = {});

/// f[n] for 0 <= n <= x (f[0] ignored), nonnegative and multiplicative.
VerificationReport verify_hall_tenenbaum(std::span<const double> f, std::uint64_t x,
                                         const SpfSieve& sieve);

struct AssumptionOptions {
    unsigned k_max = 6;
    std::optional<double> max_a2_gap;
};

/// A1: empirical C; A2: sup over grid of |ECDF - st_cdf| per checkpoint;
/// tail sums over p >= y with |a_p| < (log_2 p)^{-A} against (log_2 y)^{-(A-1)}.
VerificationReport check_assumptions(const NormalizedSequence& seq, const AngleSeries& angles, double A,
                                     std::span<const double> grid, const Checkpoints& checkpoints,
                                     const AssumptionOptions& options = {});

std::vector<double> uniform_angle_grid(std::size_t points);

}  // namespace satotate
