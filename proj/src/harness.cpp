#include "satotate/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "satotate/errors.hpp"
#include "satotate/parallel.hpp"
#include "satotate/stats.hpp"

namespace satotate {

namespace {

using std::numbers::pi;

constexpr double kCltC = 0.5 + pi * pi / 12.0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(std::span<const std::uint64_t> xs) {
    std::string s;
    for (auto x : xs) {
        if (!s.empty()) s += ',';
        s += std::to_string(x);
    }
    return s;
}

std::string join(std::span<const double> xs) {
    std::string s;
    for (auto x : xs) {
        if (!s.empty()) s += ',';
        s += fmt(x);
    }
    return s;
}

std::string to_string(SupportMode m) {
    switch (m) {
        case SupportMode::All: return "all";
        case SupportMode::Nonzero: return "nonzero";
        case SupportMode::FloorA: return "floor-A";
    }
    return "?";
}

std::string to_string(Standardization s) {
    switch (s) {
        case Standardization::Asymptotic: return "asymptotic";
        case Standardization::FiniteSize: return "finite-size";
        case Standardization::Self: return "self";
    }
    return "?";
}

template <class Pred>
std::uint64_t deterministic_count(std::size_t begin, std::size_t end, Pred&& pred) {
    // Integer counts are order independent; chunking just spreads the work.
    const std::size_t chunk = kDefaultChunk;
    if (end <= begin) return 0;
    std::vector<std::uint64_t> partial((end - begin + chunk - 1) / chunk, 0);
    parallel_for_chunks(begin, end, chunk, [&](std::size_t lo, std::size_t hi) {
        std::uint64_t c = 0;
        for (std::size_t i = lo; i < hi; ++i) c += pred(i) ? 1 : 0;
        partial[(lo - begin) / chunk] = c;
    });
    std::uint64_t total = 0;
    for (auto c : partial) total += c;
    return total;
}

void require_sieve(const SpfSieve& sieve, std::uint64_t x) {
    if (x >= 2 && sieve.limit() < x) {
        throw RangeError("sieve limit " + std::to_string(sieve.limit()) + " below cutoff " +
                         std::to_string(x));
    }
}

}  // namespace

Checkpoints::Checkpoints(std::vector<std::uint64_t> cutoffs, std::uint64_t limit)
    : cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) throw InputError("at least one checkpoint is required");
    for (std::size_t i = 0; i < cutoffs_.size(); ++i) {
        if (cutoffs_[i] < 1 || cutoffs_[i] > limit) {
            throw InputError("checkpoint " + std::to_string(cutoffs_[i]) + " outside [1, " +
                             std::to_string(limit) + "]");
        }
        if (i > 0 && cutoffs_[i] <= cutoffs_[i - 1]) throw InputError("checkpoints must increase strictly");
    }
}

Checkpoints Checkpoints::decades(std::uint64_t limit) {
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = 10; x < limit; x *= 10) xs.push_back(x);
    xs.push_back(limit);
    return Checkpoints(std::move(xs), limit);
}

std::vector<std::uint8_t> support_mask(const NormalizedSequence& seq, const SpfSieve& sieve,
                                       std::uint64_t x, const SupportFilter& filter) {
    if (x > seq.limit) throw RangeError("support cutoff beyond sequence limit");
    std::vector<std::uint8_t> mask(x + 1, 0);
    switch (filter.mode) {
        case SupportMode::All:
            for (std::uint64_t n = 1; n <= x; ++n) {
                if (seq[n] == 0.0) {
                    throw InputError("support filter 'all' hit a_" + std::to_string(n) +
                                     " = 0; use 'nonzero'");
                }
                mask[n] = 1;
            }
            break;
        case SupportMode::Nonzero:
            for (std::uint64_t n = 1; n <= x; ++n) mask[n] = seq[n] != 0.0 ? 1 : 0;
            break;
        case SupportMode::FloorA: {
            if (!(filter.A > 1.0)) throw InputError("floor-A support needs A > 1");
            require_sieve(sieve, x);
            const double floor = std::pow(log2_iter(static_cast<double>(x)), -filter.A);
            mask[1] = 1;
            const auto spf = sieve.table();
            // good[n]: every prime factor of n passes the floor.
            for (std::uint64_t n = 2; n <= x; ++n) {
                const std::uint64_t p = spf[n];
                std::uint64_t m = n;
                while (m % p == 0) m /= p;
                const bool prime_ok = std::abs(seq[p]) > floor;
                mask[n] = (prime_ok && mask[m]) ? 1 : 0;
            }
            // mask[m] above must be the prime-floor property alone; apply a_n != 0 afterwards.
            for (std::uint64_t n = 1; n <= x; ++n) {
                if (seq[n] == 0.0) mask[n] = 0;
            }
            break;
        }
    }
    return mask;
}

AngleSeries angles_from_sequence(const NormalizedSequence& seq, const SpfSieve& sieve) {
    AngleSeries out;
    out.limit = seq.limit;
    if (seq.limit < 2) return out;
    require_sieve(sieve, seq.limit);
    for (std::uint32_t p : sieve.primes()) {
        if (p > seq.limit) break;
        const double a = seq[p];
        out.records.push_back({p, a, std::acos(std::clamp(a / 2.0, -1.0, 1.0))});
    }
    return out;
}

VerificationReport verify_thm1(const NormalizedSequence& seq, double epsilon,
                               const Checkpoints& checkpoints, const Thm1Options& options) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) throw InputError("epsilon must lie in (0, 1/2]");
    if (checkpoints.back() > seq.limit) throw RangeError("checkpoint beyond sequence limit");
    VerificationReport report;
    report.name = "thm1";
    report.add_parameter("source", to_string(seq.source));
    report.add_parameter("epsilon", fmt(epsilon));
    report.add_parameter("checkpoints", join(checkpoints.values()));
    ReportTable t{"fractions",
                  {"x", "count", "exceed_fraction", "below_fraction", "predicted_exceed"},
                  {}};
    auto exceeds = [&](std::size_t n) {
        const double ll = std::log(std::log(static_cast<double>(n)));
        return std::abs(seq[n]) > std::exp((-0.5 + epsilon) * ll);
    };
    auto below = [&](std::size_t n) {
        const double ll = std::log(std::log(static_cast<double>(n)));
        return std::abs(seq[n]) < std::exp((-0.5 - epsilon) * ll);
    };
    std::vector<double> fractions;
    for (std::uint64_t x : checkpoints.values()) {
        const std::uint64_t count = x >= 3 ? x - 2 : 0;
        const double up = static_cast<double>(deterministic_count(3, x + 1, exceeds));
        const double down = static_cast<double>(deterministic_count(3, x + 1, below));
        const double denom = count > 0 ? static_cast<double>(count) : 1.0;
        const double l2 = log2_iter(static_cast<double>(x));
        const double predicted = standard_normal_cdf(-epsilon * std::sqrt(l2 / kCltC));
        fractions.push_back(up / denom);
        t.add_row({static_cast<double>(x), static_cast<double>(count), up / denom, down / denom, predicted});
    }
    report.tables.push_back(std::move(t));
    for (std::size_t i = 1; i < fractions.size(); ++i) {
        report.add_flag("exceed_step_" + std::to_string(i), fractions[i] - fractions[i - 1],
                        Comparator::LessEqual, options.monotone_slack);
    }
    return report;
}

VerificationReport verify_thm2(const NormalizedSequence& seq, const SpfSieve& sieve,
                               const Checkpoints& checkpoints, const Thm2Options& options) {
    if (checkpoints.back() > seq.limit) throw RangeError("checkpoint beyond sequence limit");
    require_sieve(sieve, checkpoints.back());
    VerificationReport report;
    report.name = "thm2";
    report.add_parameter("source", to_string(seq.source));
    report.add_parameter("checkpoints", join(checkpoints.values()));
    ReportTable t{"windows",
                  {"x", "S", "T", "ratio", "support_empty", "smooth_y", "smooth_fraction"},
                  {}};
    const auto spf = sieve.table();
    double last_ratio = 0.0;
    std::size_t idx = 0;
    for (std::uint64_t x : checkpoints.values()) {
        const std::uint64_t lo = x / 2 + 1;
        const double s = deterministic_sum(lo, x + 1, [&](std::size_t n) { return seq[n]; });
        const double total = deterministic_sum(lo, x + 1, [&](std::size_t n) { return std::abs(seq[n]); });
        const bool empty = total == 0.0;
        const double ratio = empty ? 0.0 : std::abs(s) / total;
        const double lx = log1(static_cast<double>(x));
        const double y = std::exp(4.0 * lx * log3_iter(static_cast<double>(x)) / log2_iter(static_cast<double>(x)));
        const std::uint64_t smooth = deterministic_count(lo, x + 1, [&](std::size_t n) {
            std::uint64_t m = n;
            std::uint64_t largest = 1;
            while (m > 1) {
                largest = spf[m];
                m /= largest;
            }
            return static_cast<double>(largest) <= y;
        });
        const double window = static_cast<double>(x + 1 - lo);
        t.add_row({static_cast<double>(x), s, total, ratio, empty ? 1.0 : 0.0, y,
                   window > 0 ? static_cast<double>(smooth) / window : 0.0});
        report.add_flag("triangle_" + std::to_string(idx++), ratio, Comparator::LessEqual, 1.0 + 1e-12);
        last_ratio = ratio;
    }
    report.tables.push_back(std::move(t));
    if (options.max_ratio) {
        report.add_parameter("max_ratio", fmt(*options.max_ratio));
        report.add_flag("cancellation_ratio", last_ratio, Comparator::LessEqual, *options.max_ratio);
    }
    return report;
}

VerificationReport verify_thm3(const NormalizedSequence& seq, const SpfSieve& sieve, std::uint64_t x,
                               const SupportFilter& filter, Standardization standardization,
                               const Thm3Options& options) {
    if (x > seq.limit) throw RangeError("thm3 cutoff beyond sequence limit");
    if (x < 2) throw InputError("thm3 needs x >= 2");
    require_sieve(sieve, x);
    const auto mask = support_mask(seq, sieve, x, filter);
    std::vector<std::uint64_t> support;
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (mask[n]) support.push_back(n);
    }
    if (support.empty()) throw InputError("filtered support is empty");

    VerificationReport report;
    report.name = "thm3";
    report.add_parameter("source", to_string(seq.source));
    report.add_parameter("x", std::to_string(x));
    report.add_parameter("filter", to_string(filter.mode));
    report.add_parameter("A", fmt(filter.A));
    report.add_parameter("standardization", to_string(standardization));

    const double xd = static_cast<double>(x);
    const double l2 = log2_iter(xd);

    // log|h(n)| and squarefreeness, assembled over the sieve.
    const auto spf = sieve.table();
    std::vector<double> log_h(x + 1, 0.0);
    std::vector<std::uint8_t> squarefree(x + 1, 1);
    for (std::uint64_t n = 2; n <= x; ++n) {
        const std::uint64_t p = spf[n];
        std::uint64_t m = n / p;
        squarefree[n] = (squarefree[m] && (m == 1 || spf[m] != p)) ? 1 : 0;
        while (m % p == 0) m /= p;
        const double ap = seq[p];
        log_h[n] = log_h[m] + (ap != 0.0 ? std::log(std::abs(ap)) : 0.0);
    }
    const double lhs = deterministic_sum(1, x + 1, [&](std::size_t n) { return log_h[n]; });
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p : sieve.primes()) {
        if (p > x) break;
        primes.push_back(p);
    }
    const double rhs = deterministic_sum(0, primes.size(), [&](std::size_t i) {
        const double ap = seq[primes[i]];
        if (ap == 0.0) return 0.0;
        return std::log(std::abs(ap)) * static_cast<double>(x / primes[i]);
    });
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    const double rel = std::abs(lhs - rhs) / scale;

    const std::size_t m = support.size();
    auto log_a = [&](std::size_t j) { return std::log(std::abs(seq[support[j]])); };
    double mu = 0.0;
    double sigma2 = 1.0;
    switch (standardization) {
        case Standardization::Asymptotic:
            mu = -0.5 * l2;
            sigma2 = kCltC * l2;
            break;
        case Standardization::FiniteSize: {
            const double floor = filter.mode == SupportMode::FloorA ? std::pow(l2, -filter.A) : 0.0;
            AngleSeries primes_of_seq = angles_from_sequence(seq, sieve);
            const LogMomentEstimate est = prime_log_moments(primes_of_seq, xd, floor);
            mu = est.mu;
            sigma2 = est.sigma2;
            break;
        }
        case Standardization::Self: {
            mu = deterministic_sum(0, m, log_a) / static_cast<double>(m);
            sigma2 = deterministic_sum(0, m, [&](std::size_t j) {
                         const double d = log_a(j) - mu;
                         return d * d;
                     }) / static_cast<double>(m);
            break;
        }
    }
    if (!(sigma2 > 0.0)) throw InputError("degenerate standardization (variance 0)");
    const double sd = std::sqrt(sigma2);
    std::vector<double> z(m);
    parallel_for_chunks(0, m, kDefaultChunk, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) z[j] = (log_a(j) - mu) / sd;
    });
    const double md = static_cast<double>(m);
    const double zmean = deterministic_sum(0, m, [&](std::size_t j) { return z[j]; }) / md;
    auto central = [&](int k) {
        return deterministic_sum(0, m, [&](std::size_t j) { return std::pow(z[j] - zmean, k); }) / md;
    };
    const double c2 = central(2);
    const double c3 = central(3);
    const double c4 = central(4);
    const double skew = c2 > 0 ? c3 / std::pow(c2, 1.5) : 0.0;
    const double exkurt = c2 > 0 ? c4 / (c2 * c2) - 3.0 : 0.0;

    // Histogram before z is moved into the ECDF.
    ReportTable hist{"histogram", {"bin_lo", "bin_hi", "count", "expected"}, {}};
    {
        constexpr double kLo = -4.0;
        constexpr double kWidth = 0.25;
        constexpr int kBins = 32;
        std::vector<std::uint64_t> counts(kBins, 0);
        for (double v : z) {
            const int b = static_cast<int>(std::floor((v - kLo) / kWidth));
            if (b >= 0 && b < kBins) ++counts[b];
        }
        for (int b = 0; b < kBins; ++b) {
            const double lo = kLo + kWidth * b;
            const double hi = lo + kWidth;
            hist.add_row({lo, hi, static_cast<double>(counts[b]),
                          md * (standard_normal_cdf(hi) - standard_normal_cdf(lo))});
        }
    }
    const double ks = ks_statistic(Ecdf(std::move(z)), standard_normal_cdf);

    // Strongly multiplicative gap c(n) = log|h(n)| - log|a_n| on the support.
    std::vector<double> gaps(m);
    double squarefree_max = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        gaps[j] = std::abs(log_h[support[j]] - log_a(j));
        if (squarefree[support[j]]) squarefree_max = std::max(squarefree_max, gaps[j]);
    }
    std::sort(gaps.begin(), gaps.end());
    ReportTable q{"gap_quantiles", {"quantile", "abs_gap"}, {}};
    for (double level : {0.5, 0.9, 0.99, 0.999, 1.0}) {
        const auto pos = static_cast<std::size_t>(std::ceil(level * md)) - 1;
        q.add_row({level, gaps[std::min(pos, m - 1)]});
    }

    ReportTable summary{"summary",
                        {"x", "log2x", "support_size", "support_fraction", "mu", "sigma2",
                         "mu_over_log2x", "sigma2_over_log2x", "z_mean", "z_var", "ks", "skewness",
                         "excess_kurtosis", "identity_lhs", "identity_rhs", "identity_rel_diff",
                         "squarefree_gap_max"},
                        {}};
    summary.add_row({xd, l2, md, md / xd, mu, sigma2, mu / l2, sigma2 / l2, zmean, c2, ks, skew, exkurt,
                     lhs, rhs, rel, squarefree_max});
    report.tables.push_back(std::move(summary));
    report.tables.push_back(std::move(q));
    report.tables.push_back(std::move(hist));

    report.add_flag("additive_identity", rel, Comparator::LessEqual, options.identity_tolerance);
    report.add_flag("squarefree_gap", squarefree_max, Comparator::LessEqual, 1e-9);
    if (options.max_ks) report.add_flag("ks_normal", ks, Comparator::LessEqual, *options.max_ks);
    if (options.max_abs_skewness) {
        report.add_flag("abs_skewness", std::abs(skew), Comparator::LessEqual, *options.max_abs_skewness);
    }
    return report;
}

VerificationReport verify_lemma_sums(const NormalizedSequence& seq, std::span<const double> gammas,
                                     const Checkpoints& checkpoints, const LemmaSumsOptions& options) {
    for (double g : gammas) {
        if (!(g > 0.0 && g <= 2.0)) throw InputError("gamma values must lie in (0, 2]");
    }
    if (checkpoints.back() > seq.limit) throw RangeError("checkpoint beyond sequence limit");
    VerificationReport report;
    report.name = "lemma-sums";
    report.add_parameter("source", to_string(seq.source));
    report.add_parameter("gammas", join(gammas));
    report.add_parameter("checkpoints", join(checkpoints.values()));

    std::vector<std::string> cols{"x", "log_x", "sum_abs_over_n", "sum_sq", "sum_sq_over_n",
                                  "sq_over_n_per_log_x"};
    for (double g : gammas) cols.push_back("sum_abs_pow_" + fmt(g));
    ReportTable sums{"sums", cols, {}};

    std::vector<std::vector<double>> rows;
    for (std::uint64_t x : checkpoints.values()) {
        const double lx = std::log(static_cast<double>(x));
        const double abs_n = deterministic_sum(1, x + 1, [&](std::size_t n) {
            return std::abs(seq[n]) / static_cast<double>(n);
        });
        const double sq = deterministic_sum(1, x + 1, [&](std::size_t n) { return seq[n] * seq[n]; });
        const double sq_n = deterministic_sum(1, x + 1, [&](std::size_t n) {
            return seq[n] * seq[n] / static_cast<double>(n);
        });
        std::vector<double> row{static_cast<double>(x), lx, abs_n, sq, sq_n, lx > 0 ? sq_n / lx : 0.0};
        for (double g : gammas) {
            row.push_back(deterministic_sum(1, x + 1, [&](std::size_t n) { return std::pow(std::abs(seq[n]), g); }));
        }
        rows.push_back(row);
        sums.add_row(std::move(row));
    }

    // S(x) ~ (log x)^e between consecutive checkpoints; x-scaled sums use S/x.
    std::vector<std::string> ecols{"x_lo", "x_hi", "exp_abs_over_n", "exp_sq_over_n", "exp_sq_scaled"};
    for (double g : gammas) ecols.push_back("exp_abs_pow_" + fmt(g) + "_scaled");
    ReportTable exps{"exponents", ecols, {}};
    auto slope = [](double s1, double s2, double l1, double l2) {
        if (!(s1 > 0 && s2 > 0 && l1 > 0 && l2 > l1)) return std::numeric_limits<double>::quiet_NaN();
        return std::log(s2 / s1) / std::log(l2 / l1);
    };
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        std::vector<double> row{a[0], b[0], slope(a[2], b[2], a[1], b[1]), slope(a[4], b[4], a[1], b[1]),
                                slope(a[3] / a[0], b[3] / b[0], a[1], b[1])};
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            row.push_back(slope(a[6 + g] / a[0], b[6 + g] / b[0], a[1], b[1]));
        }
        exps.add_row(std::move(row));
    }
    report.tables.push_back(std::move(sums));
    report.tables.push_back(std::move(exps));

    if (options.square_over_n_band) {
        const auto [lo, hi] = *options.square_over_n_band;
        const double v = rows.back()[5];
        report.add_parameter("square_over_n_band", fmt(lo) + "," + fmt(hi));
        report.add_flag("sq_over_n_per_log_x_low", v, Comparator::GreaterEqual, lo);
        report.add_flag("sq_over_n_per_log_x_high", v, Comparator::LessEqual, hi);
    }
    return report;
}

VerificationReport verify_hall_tenenbaum(std::span<const double> f, std::uint64_t x,
                                         const SpfSieve& sieve) {
    if (x < 2) throw InputError("hall-tenenbaum needs x >= 2");
    if (f.size() < x + 1) throw InputError("f must cover 0..x");
    require_sieve(sieve, x);
    for (std::uint64_t n = 1; n <= x; ++n) {
        if (f[n] < 0.0 || std::isnan(f[n])) {
            throw InputError("f(" + std::to_string(n) + ") is negative");
        }
    }
    VerificationReport report;
    report.name = "hall-tenenbaum";
    report.add_parameter("x", std::to_string(x));

    // A = sup_{t<=x} (1/t) sum_{p<=t} f(p) log p, attained at a prime.
    double running = 0.0;
    double a_const = 0.0;
    double b_const = 0.0;
    for (std::uint32_t p : sieve.primes()) {
        if (p > x) break;
        const double lp = std::log(static_cast<double>(p));
        running += f[p] * lp;
        a_const = std::max(a_const, running / static_cast<double>(p));
        std::uint64_t q = static_cast<std::uint64_t>(p) * p;
        for (unsigned alpha = 2; q <= x; ++alpha) {
            b_const += f[q] * alpha * lp / static_cast<double>(q);
            if (q > x / p) break;
            q *= p;
        }
    }
    const double lhs = deterministic_sum(1, x + 1, [&](std::size_t n) { return f[n]; });
    const double harmonic = deterministic_sum(1, x + 1, [&](std::size_t n) { return f[n] / static_cast<double>(n); });
    const double xd = static_cast<double>(x);
    const double rhs = (a_const + b_const + 1.0) * xd / std::log(xd) * harmonic;
    ReportTable t{"inequality", {"x", "A", "B", "lhs", "rhs", "lhs_over_rhs"}, {}};
    t.add_row({xd, a_const, b_const, lhs, rhs, rhs > 0 ? lhs / rhs : 0.0});
    report.tables.push_back(std::move(t));
    report.add_flag("lhs_minus_rhs", lhs - rhs, Comparator::LessEqual, 0.0);
    return report;
}

VerificationReport check_assumptions(const NormalizedSequence& seq, const AngleSeries& angles, double A,
                                     std::span<const double> grid, const Checkpoints& checkpoints,
                                     const AssumptionOptions& options) {
    if (!(A > 1.0)) throw InputError("assumption check needs A > 1");
    if (angles.records.empty()) throw InputError("assumption check needs prime angles");
    VerificationReport report;
    report.name = "assumptions";
    report.add_parameter("source", to_string(seq.source));
    report.add_parameter("A", fmt(A));
    report.add_parameter("grid_points", std::to_string(grid.size()));
    report.add_parameter("checkpoints", join(checkpoints.values()));
    report.add_parameter("k_max", std::to_string(options.k_max));

    // A1
    double c_max = -std::numeric_limits<double>::infinity();
    double arg_p = 0;
    double arg_k = 0;
    std::uint64_t checked = 0;
    std::uint64_t zero_powers = 0;
    for (const auto& r : angles.records) {
        if (r.p > seq.limit) break;
        if (seq[r.p] == 0.0) continue;
        const double lp = std::log(static_cast<double>(r.p));
        std::uint64_t q = r.p;
        for (unsigned k = 1; k <= options.k_max && q <= seq.limit; ++k) {
            ++checked;
            const double v = std::abs(seq[q]);
            if (v == 0.0) {
                ++zero_powers;
            } else {
                const double c = -std::log(v) / (k * lp);
                if (c > c_max) {
                    c_max = c;
                    arg_p = static_cast<double>(r.p);
                    arg_k = k;
                }
            }
            if (q > seq.limit / r.p) break;
            q *= r.p;
        }
    }
    ReportTable a1{"A1", {"C", "argmax_p", "argmax_k", "prime_powers_checked", "zero_prime_powers"}, {}};
    a1.add_row({checked > zero_powers ? c_max : std::numeric_limits<double>::quiet_NaN(), arg_p, arg_k,
                static_cast<double>(checked), static_cast<double>(zero_powers)});

    // A2
    ReportTable a2{"A2", {"x", "primes", "sup_gap", "ks", "bound"}, {}};
    double last_gap = 0.0;
    for (std::uint64_t x : checkpoints.values()) {
        std::vector<double> thetas;
        for (const auto& r : angles.records) {
            if (r.p > x) break;
            thetas.push_back(r.theta);
        }
        if (thetas.empty()) continue;
        const auto count = static_cast<double>(thetas.size());
        const Ecdf ecdf(std::move(thetas));
        double gap = 0.0;
        for (double alpha : grid) gap = std::max(gap, std::abs(ecdf(alpha) - st_cdf(alpha)));
        const double ks = ks_statistic(ecdf, [](double a) { return st_cdf(std::clamp(a, 0.0, pi)); });
        const double bound = std::pow(log2_iter(static_cast<double>(x)), -A);
        a2.add_row({static_cast<double>(x), count, gap, ks, bound});
        last_gap = gap;
    }

    // Tail sums over small |a_p|.
    ReportTable tail{"tail_sums", {"y", "tail_sum", "primes", "bound", "ratio"}, {}};
    const std::uint64_t p_max = angles.records.back().p;
    for (std::uint64_t y = 10; y < p_max; y *= 10) {
        double sum = 0.0;
        std::uint64_t count = 0;
        for (const auto& r : angles.records) {
            if (r.p < y) continue;
            if (std::abs(r.a_p) < std::pow(log2_iter(static_cast<double>(r.p)), -A)) {
                sum += 1.0 / static_cast<double>(r.p);
                ++count;
            }
        }
        const double bound = std::pow(log2_iter(static_cast<double>(y)), -(A - 1.0));
        tail.add_row({static_cast<double>(y), sum, static_cast<double>(count), bound, sum / bound});
    }
    report.tables.push_back(std::move(a1));
    report.tables.push_back(std::move(a2));
    report.tables.push_back(std::move(tail));
    if (options.max_a2_gap) report.add_flag("a2_sup_gap", last_gap, Comparator::LessEqual, *options.max_a2_gap);
    return report;
}

std::vector<double> uniform_angle_grid(std::size_t points) {
    if (points < 2) throw InputError("angle grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = pi * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    g.back() = pi;
    return g;
}

}  // namespace satotate
