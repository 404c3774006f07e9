#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satotate/arith.hpp"
#include "satotate/ec.hpp"
#include "satotate/errors.hpp"
#include "satotate/harness.hpp"
#include "satotate/io.hpp"
#include "satotate/parallel.hpp"
#include "satotate/stats.hpp"
#include "satotate/synthetic.hpp"
#include "satotate/tau.hpp"

namespace satotate::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::uint64_t limit = 0;  // 0: take it from the cached sequence
    std::uint64_t seed = 0;
    std::vector<std::int64_t> curve{-1, 1};
    double epsilon = 0.25;
    std::vector<double> gammas{0.5, 1.0, 1.5};
    std::vector<std::uint64_t> checkpoints;
    double A = 2.0;
    unsigned threads = 0;
    std::string cache_dir = ".satotate-cache";
    std::string format = "json";
    std::string source;
    std::string output;
    std::string rule = "hecke-chebyshev";
    double rho = 0.25;

    std::uint64_t x = 0;
    bool integrity = false;
    double max_ratio = kUnset;
    double max_ks = kUnset;
    double max_skewness = kUnset;
    double max_a2_gap = kUnset;
    std::vector<double> band;
    std::string support = "nonzero";
    std::string standardization = "self";
    std::string function = "abs-sq";
    std::size_t grid_points = 721;
};

std::optional<double> opt(double v) {
    if (std::isnan(v)) return std::nullopt;
    return v;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

fs::path cache_dir(const Config& c) { return fs::path(c.cache_dir); }

fs::path sequence_path(const Config& c, SequenceSource s) {
    return cache_dir(c) / ("sequence_" + to_string(s) + ".astc");
}

fs::path angles_path(const Config& c, SequenceSource s) {
    return cache_dir(c) / ("angles_" + to_string(s) + ".astc");
}

void prepare_cache(const Config& c) { fs::create_directories(cache_dir(c)); }

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void set_current(const Config& c, SequenceSource s) { write_text(cache_dir(c) / "current", to_string(s) + "\n"); }

std::uint64_t require_limit(const Config& c) {
    if (c.limit == 0) throw UsageError("--limit is required");
    return c.limit;
}

SequenceSource resolve_source(const Config& c) {
    if (!c.source.empty()) {
        try {
            return parse_source(c.source);
        } catch (const std::exception&) {
            throw UsageError("unknown source '" + c.source + "' (tau, elliptic, synthetic)");
        }
    }
    std::ifstream in(cache_dir(c) / "current");
    std::string name;
    if (!(in >> name)) {
        throw UsageError("no cached sequence in " + c.cache_dir +
                         "; run tau, ec or synth first, or pass --source with --limit");
    }
    return parse_source(name);
}

// Generators -----------------------------------------------------------------

NormalizedSequence generate_tau(const Config& c) {
    const auto limit = require_limit(c);
    prepare_cache(c);
    const auto t0 = Clock::now();
    const auto table = expand_delta(TauConfig{limit});
    const auto seq = normalize_tau(table);
    save_cache(cache_dir(c) / "tau_exact.astc", table);
    save_cache(sequence_path(c, SequenceSource::Tau), seq);
    save_cache(angles_path(c, SequenceSource::Tau), tau_angles(table));
    set_current(c, SequenceSource::Tau);
    std::cout << "tau: limit " << limit << ", tau(" << limit << ") = " << table.taus[limit].get_str() << "\n";
    std::cerr << "tau: " << fmt(seconds_since(t0)) << " s\n";
    return seq;
}

NormalizedSequence generate_ec(const Config& c) {
    const auto limit = require_limit(c);
    if (c.curve.size() != 2) throw UsageError("--curve expects A,B");
    const CurveSpec curve(c.curve[0], c.curve[1]);
    prepare_cache(c);
    const auto t0 = Clock::now();
    const auto series = trace_series(curve, limit);
    const auto sieve = build_spf_sieve(limit);
    const auto seq = ec_normalized_sequence(series, sieve, limit);
    save_cache(cache_dir(c) / "traces.astc", series);
    save_cache(sequence_path(c, SequenceSource::Elliptic), seq);
    save_cache(angles_path(c, SequenceSource::Elliptic), ec_angles(series));
    set_current(c, SequenceSource::Elliptic);
    const auto kappa = kappa_partial(series, limit);
    const auto census = supersingular_census(series);
    std::cout << "ec: y^2 = x^3 + (" << curve.a4() << ")x + (" << curve.a6() << "), limit " << limit
              << ", discriminant " << curve.discriminant().get_str() << "\n"
              << "ec: good primes " << census.good_primes << ", supersingular " << census.zero_traces
              << ", kappa(x) = " << fmt(kappa.value) << "\n";
    std::cerr << "ec: " << fmt(seconds_since(t0)) << " s\n";
    return seq;
}

NormalizedSequence generate_synth(const Config& c) {
    const auto limit = require_limit(c);
    PrimePowerRule rule;
    try {
        rule.kind = parse_rule_kind(c.rule);
    } catch (const std::exception&) {
        throw UsageError("unknown rule '" + c.rule + "'");
    }
    rule.rho = c.rho;
    prepare_cache(c);
    const auto t0 = Clock::now();
    const auto sieve = build_spf_sieve(limit);
    const auto res = build_synthetic_sequence({limit, c.seed, rule}, sieve);
    save_cache(sequence_path(c, SequenceSource::Synthetic), res.sequence);
    save_cache(angles_path(c, SequenceSource::Synthetic), res.angles);
    set_current(c, SequenceSource::Synthetic);
    const double rate = res.proposals ? static_cast<double>(res.angles.records.size()) / res.proposals : 0.0;
    std::cout << "synth: limit " << limit << ", seed " << c.seed << ", rule " << to_string(rule.kind)
              << ", primes " << res.angles.records.size() << ", acceptance rate " << fmt(rate)
              << ", growth violations " << res.growth_violations.size() << "\n";
    std::cerr << "synth: " << fmt(seconds_since(t0)) << " s\n";
    return res.sequence;
}

NormalizedSequence generate(const Config& c, SequenceSource s) {
    switch (s) {
        case SequenceSource::Tau: return generate_tau(c);
        case SequenceSource::Elliptic: return generate_ec(c);
        case SequenceSource::Synthetic: return generate_synth(c);
    }
    throw UsageError("unknown source");
}

/// Cached sequence for the resolved source, generated on demand when the
/// source and limit are both given explicitly.
NormalizedSequence load_sequence(const Config& c, SequenceSource s) {
    const auto path = sequence_path(c, s);
    if (fs::exists(path)) {
        auto seq = load_normalized(path);
        if (c.limit == 0 || c.limit == seq.limit) return seq;
    }
    if (!c.source.empty() && c.limit > 0) return generate(c, s);
    throw UsageError("no cached " + to_string(s) + " sequence" +
                     (c.limit ? " with limit " + std::to_string(c.limit) : std::string()) + " in " + c.cache_dir);
}

AngleSeries load_or_derive_angles(const Config& c, SequenceSource s) {
    const auto path = angles_path(c, s);
    if (fs::exists(path)) {
        auto a = load_angles(path);
        if (c.limit == 0 || c.limit == a.limit) return a;
    }
    const auto seq = load_sequence(c, s);
    const auto angles = angles_from_sequence(seq, build_spf_sieve(seq.limit));
    prepare_cache(c);
    save_cache(path, angles);
    return angles;
}

Checkpoints checkpoints_for(const Config& c, std::uint64_t limit) {
    if (c.checkpoints.empty()) return Checkpoints::decades(limit);
    return Checkpoints(c.checkpoints, limit);
}

int emit(const Config& c, VerificationReport report, double seconds) {
    report.runtime_seconds = seconds;
    const fs::path prefix = c.output.empty() ? cache_dir(c) / ("report_" + report.name) : fs::path(c.output);
    const auto json = report_to_json(report);
    const auto csv = report_to_csv(report);
    write_text(fs::path(prefix.string() + ".json"), json);
    write_text(fs::path(prefix.string() + ".csv"), csv);
    std::cout << (c.format == "csv" ? csv : json + "\n");
    std::size_t passed = 0;
    for (const auto& f : report.flags) passed += f.pass;
    std::cerr << report.name << ": " << passed << "/" << report.flags.size() << " flags pass, "
              << fmt(seconds) << " s, written to " << prefix.string() << ".{json,csv}\n";
    return exit_code(report);
}

// Subcommands -----------------------------------------------------------------

int cmd_tau(const Config& c) {
    const auto t0 = Clock::now();
    generate_tau(c);
    if (!c.integrity) return 0;
    return emit(c, integrity_check(load_exact_tau(cache_dir(c) / "tau_exact.astc")), seconds_since(t0));
}

int cmd_angles(const Config& c) {
    const auto s = resolve_source(c);
    const auto a = load_or_derive_angles(c, s);
    std::cout << "angles: source " << to_string(s) << ", primes " << a.records.size() << ", limit " << a.limit
              << ", written to " << angles_path(c, s).string() << "\n";
    return 0;
}

int cmd_stats(const Config& c) {
    const auto t0 = Clock::now();
    const auto s = resolve_source(c);
    const auto a = load_or_derive_angles(c, s);
    const auto sum = prime_angle_summary(a, c.gammas);
    VerificationReport r;
    r.name = "stats";
    r.add_parameter("source", to_string(s));
    r.add_parameter("limit", std::to_string(a.limit));
    r.add_parameter("A", fmt(c.A));
    ReportTable m{"moments",
                  {"primes", "max_prime", "mean_two_cos", "mean_two_cos_sq", "mean_abs_cos", "frac_abs_cos_half", "ks"},
                  {}};
    m.add_row({static_cast<double>(sum.primes), sum.max_prime, sum.mean_two_cos, sum.mean_two_cos_sq,
               sum.mean_abs_cos, sum.frac_abs_cos_half, sum.ks});
    ReportTable g{"gammas", {"gamma", "mean", "mertens_sum", "mertens_scaled", "h_gamma"}, {}};
    for (const auto& gs : sum.gammas) g.add_row({gs.gamma, gs.mean, gs.mertens_sum, gs.mertens_scaled, h_gamma(gs.gamma)});
    ReportTable lm{"log_moments", {"x", "mu", "sigma2", "mu_over_log2x", "sigma2_over_log2x", "primes_used"}, {}};
    const auto cps = checkpoints_for(c, a.limit);
    for (auto x : cps.values()) {
        const double xd = static_cast<double>(x);
        const auto e = prime_log_moments(a, xd, std::pow(log2_iter(xd), -c.A));
        lm.add_row({xd, e.mu, e.sigma2, e.mu / log2_iter(xd), e.sigma2 / log2_iter(xd),
                    static_cast<double>(e.primes_used)});
    }
    r.tables = {m, g, lm};
    if (auto k = opt(c.max_ks)) r.add_flag("ks", sum.ks, Comparator::LessEqual, *k);
    return emit(c, std::move(r), seconds_since(t0));
}

int cmd_constants() {
    const auto k = st_constants();
    std::cout << "h(1) = " << fmt(k.h1) << "  [quadrature; closed form 8/(3 pi) = " << fmt(k.h1_closed) << "]\n"
              << "h(2) = " << fmt(h_gamma(2.0)) << "  [quadrature; E (2 cos theta)^2 = 1]\n"
              << "c = 1/2 + pi^2/12 = " << fmt(k.clt_c) << "  [quadrature E log^2(2|cos theta|) = "
              << fmt(k.clt_c_quadrature) << "]\n"
              << "E log(2|cos theta|) = " << fmt(k.log_mean) << "  [quadrature; expected -1/2]\n"
              << "int_0^pi cos(t) sin^2(t) dt = " << fmt(k.signed_cos_moment) << "  [quadrature]\n"
              << "int_0^pi |cos(t)| sin^2(t) dt = " << fmt(k.abs_cos_moment)
              << "  [quadrature; exact value 2/3]\n"
              << "P(|cos theta| >= 1/2) = 2/3 - sqrt(3)/(2 pi) = " << fmt(k.half_density)
              << "  [quadrature " << fmt(k.half_density_quadrature) << "]\n";
    return 0;
}

SupportMode parse_support(const std::string& s) {
    if (s == "all") return SupportMode::All;
    if (s == "nonzero") return SupportMode::Nonzero;
    if (s == "floor") return SupportMode::FloorA;
    throw UsageError("unknown support mode '" + s + "' (all, nonzero, floor)");
}

Standardization parse_standardization(const std::string& s) {
    if (s == "asymptotic") return Standardization::Asymptotic;
    if (s == "finite") return Standardization::FiniteSize;
    if (s == "self") return Standardization::Self;
    throw UsageError("unknown standardization '" + s + "' (asymptotic, finite, self)");
}

int cmd_verify(const Config& c, const std::string& which) {
    const auto s = resolve_source(c);
    const auto seq = load_sequence(c, s);
    const auto t0 = Clock::now();
    VerificationReport r;
    if (which == "thm1") {
        r = verify_thm1(seq, c.epsilon, checkpoints_for(c, seq.limit));
    } else if (which == "thm2") {
        Thm2Options o;
        o.max_ratio = opt(c.max_ratio);
        r = verify_thm2(seq, build_spf_sieve(seq.limit), checkpoints_for(c, seq.limit), o);
    } else if (which == "thm3") {
        const auto x = c.x ? c.x : seq.limit;
        Thm3Options o;
        o.max_ks = opt(c.max_ks);
        o.max_abs_skewness = opt(c.max_skewness);
        r = verify_thm3(seq, build_spf_sieve(x), x, {parse_support(c.support), c.A},
                        parse_standardization(c.standardization), o);
    } else if (which == "lemma-sums") {
        LemmaSumsOptions o;
        if (!c.band.empty()) {
            if (c.band.size() != 2) throw UsageError("--band expects LO,HI");
            o.square_over_n_band = std::pair{c.band[0], c.band[1]};
        }
        r = verify_lemma_sums(seq, c.gammas, checkpoints_for(c, seq.limit), o);
    } else if (which == "hall-tenenbaum") {
        const auto x = c.x ? c.x : seq.limit;
        if (x > seq.limit) throw UsageError("--x exceeds the sequence limit");
        std::vector<double> f(x + 1, 0.0);
        for (std::uint64_t n = 1; n <= x; ++n) {
            if (c.function == "one") f[n] = 1.0;
            else if (c.function == "abs-sq") f[n] = seq.values[n] * seq.values[n];
            else if (c.function == "abs") f[n] = std::abs(seq.values[n]);
            else throw UsageError("unknown function '" + c.function + "' (one, abs, abs-sq)");
        }
        r = verify_hall_tenenbaum(f, x, build_spf_sieve(x));
        r.add_parameter("function", c.function);
    } else if (which == "assumptions") {
        const auto angles = load_or_derive_angles(c, s);
        AssumptionOptions o;
        o.max_a2_gap = opt(c.max_a2_gap);
        const auto grid = uniform_angle_grid(c.grid_points);
        r = check_assumptions(seq, angles, c.A, grid, checkpoints_for(c, seq.limit), o);
    } else {
        throw UsageError("unknown verifier " + which);
    }
    r.add_parameter("source", to_string(s));
    return emit(c, std::move(r), seconds_since(t0));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    Config c;
    CLI::App app{"Sato-Tate sequence toolkit: exact tau, elliptic traces, synthetic samples, verifiers"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; command-line flags override it");

    app.add_option("--limit", c.limit, "sequence length N (or prime bound P for ec)");
    app.add_option("--seed", c.seed, "synthetic seed");
    app.add_option("--curve", c.curve, "curve coefficients A,B of y^2 = x^3 + Ax + B")->delimiter(',')->expected(2);
    app.add_option("--epsilon", c.epsilon, "Theorem 1 epsilon in (0, 1/2)");
    app.add_option("--gammas", c.gammas, "comma-separated gamma list in [0, 2]")->delimiter(',');
    app.add_option("--checkpoints", c.checkpoints, "comma-separated increasing cutoffs")->delimiter(',');
    app.add_option("--A", c.A, "support floor exponent A");
    app.add_option("--threads", c.threads, "worker threads (0 = hardware)");
    app.add_option("--cache-dir", c.cache_dir, "cache directory")->envname("SATOTATE_CACHE_DIR");
    app.add_option("--format", c.format, "stdout report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--source", c.source, "tau | elliptic | synthetic (default: last generated)");
    app.add_option("--output", c.output, "report path prefix (default <cache>/report_<name>)");
    app.add_option("--rule", c.rule, "prime-power rule: hecke-chebyshev | truncate-zero | exact-integer-hecke");
    app.add_option("--rho", c.rho, "growth exponent rho for the prime-power check");
    app.add_option("--x", c.x, "evaluation point (thm3, hall-tenenbaum; default: limit)");
    app.add_option("--max-ratio", c.max_ratio, "thm2: flag |S|/T at the last checkpoint");
    app.add_option("--max-ks", c.max_ks, "thm3/stats: flag the KS statistic");
    app.add_option("--max-skewness", c.max_skewness, "thm3: flag |skewness|");
    app.add_option("--max-a2-gap", c.max_a2_gap, "assumptions: flag the A2 sup gap");
    app.add_option("--band", c.band, "lemma-sums: LO,HI band for sum |a_n|^2/n / log x")->delimiter(',');
    app.add_option("--support", c.support, "thm3 support: all | nonzero | floor");
    app.add_option("--standardization", c.standardization, "thm3: asymptotic | finite | self");
    app.add_option("--function", c.function, "hall-tenenbaum f: one | abs | abs-sq");
    app.add_option("--grid-points", c.grid_points, "assumptions: angle grid size");
    app.add_flag("--integrity", c.integrity, "tau: run the integrity checks and write a report");

    auto* tau = app.add_subcommand("tau", "exact tau(n) for n <= limit");
    auto* ec = app.add_subcommand("ec", "Frobenius traces of an elliptic curve for p <= limit");
    auto* synth = app.add_subcommand("synth", "synthetic Sato-Tate multiplicative sequence");
    auto* angles = app.add_subcommand("angles", "cache the prime angles of a sequence");
    auto* constants = app.add_subcommand("constants", "Sato-Tate constants by quadrature");
    auto* stats = app.add_subcommand("stats", "prime-angle statistics of a sequence");
    auto* verify = app.add_subcommand("verify", "run a verifier and write JSON + CSV");
    verify->require_subcommand(1);
    std::vector<CLI::App*> verifiers;
    for (const char* name : {"thm1", "thm2", "thm3", "lemma-sums", "hall-tenenbaum", "assumptions"}) {
        verifiers.push_back(verify->add_subcommand(name, std::string("verifier ") + name));
    }
    for (auto* sub : {tau, ec, synth, angles, constants, stats, verify}) sub->fallthrough();
    for (auto* sub : verifiers) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c.threads > 0) set_thread_count(c.threads);
        if (*tau) return cmd_tau(c);
        if (*ec) {
            generate_ec(c);
            return 0;
        }
        if (*synth) {
            generate_synth(c);
            return 0;
        }
        if (*angles) return cmd_angles(c);
        if (*constants) return cmd_constants();
        if (*stats) return cmd_stats(c);
        for (auto* sub : verifiers) {
            if (*sub) return cmd_verify(c, sub->get_name());
        }
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "range error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IncompleteInputError& e) {
        std::cerr << "incomplete input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace satotate::cli
