#include "satotate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "satotate/errors.hpp"
#include "satotate/parallel.hpp"

namespace satotate {

namespace {

using std::numbers::pi;

double simpson_step(const std::function<double(double)>& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
    if (a == b) return 0.0;
    // Seed with four panels so symmetric integrands cannot fool the first test.
    constexpr int kPanels = 4;
    double total = 0.0;
    const double width = (b - a) / kPanels;
    for (int i = 0; i < kPanels; ++i) {
        const double lo = a + width * i;
        const double hi = (i + 1 == kPanels) ? b : lo + width;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fmid = f(mid);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole, tol / kPanels, max_depth);
    }
    return total;
}

double st_cdf(double alpha) {
    if (!(alpha >= 0.0 && alpha <= pi)) throw DomainError("st_cdf: alpha outside [0, pi]");
    return alpha / pi - std::sin(2.0 * alpha) / (2.0 * pi);
}

double st_density(double theta) {
    const double s = std::sin(theta);
    return 2.0 / pi * s * s;
}

double h_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 2.0)) throw DomainError("h_gamma: gamma outside [0, 2]");
    // Symmetric about pi/2; on the half interval put phi = pi/2 - theta and
    // phi = (pi/2) t^2 to soften the |cos|^gamma cusp at theta = pi/2.
    auto integrand = [gamma](double t) {
        const double phi = 0.5 * pi * t * t;
        const double c = std::cos(phi);
        return std::pow(2.0 * std::sin(phi), gamma) * c * c * pi * t;
    };
    return 4.0 / pi * integrate_adaptive_simpson(integrand, 0.0, 1.0, 1e-13, 60);
}

LogMoments st_log_moments() {
    // u = 2 sin(phi), phi = (pi/2) e^{-s}: the log singularity at u = 0 becomes
    // linear growth in s against e^{-s}; the tail beyond s = 80 is below 1e-30.
    auto moment = [](int power) {
        auto g = [power](double s) {
            const double phi = 0.5 * pi * std::exp(-s);
            const double l = std::log(2.0 * std::sin(phi));
            const double c = std::cos(phi);
            return std::pow(l, power) * c * c * phi;
        };
        return 4.0 / pi * (integrate_adaptive_simpson(g, 0.0, 4.0, 1e-14, 60) +
                           integrate_adaptive_simpson(g, 4.0, 80.0, 1e-14, 60));
    };
    return {moment(1), moment(2)};
}

STConstants st_constants() {
    STConstants c{};
    c.h1 = h_gamma(1.0);
    c.h1_closed = 8.0 / (3.0 * pi);
    c.clt_c = 0.5 + pi * pi / 12.0;
    const LogMoments m = st_log_moments();
    c.clt_c_quadrature = m.m2;
    c.log_mean = m.m1;
    auto abs_cos = [](double t) {
        const double s = std::sin(t);
        return std::abs(std::cos(t)) * s * s;
    };
    auto signed_cos = [](double t) {
        const double s = std::sin(t);
        return std::cos(t) * s * s;
    };
    c.abs_cos_moment = integrate_adaptive_simpson(abs_cos, 0.0, pi / 2, 1e-14) +
                       integrate_adaptive_simpson(abs_cos, pi / 2, pi, 1e-14);
    c.signed_cos_moment = integrate_adaptive_simpson(signed_cos, 0.0, pi / 2, 1e-14) +
                          integrate_adaptive_simpson(signed_cos, pi / 2, pi, 1e-14);
    c.half_density = 2.0 / 3.0 - std::sqrt(3.0) / (2.0 * pi);
    c.half_density_quadrature =
        4.0 / pi * integrate_adaptive_simpson([](double t) { return std::sin(t) * std::sin(t); }, 0.0,
                                              pi / 3, 1e-14);
    return c;
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

Ecdf::Ecdf(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) throw InputError("empirical CDF needs at least one sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_statistic(const Ecdf& sample, const std::function<double(double)>& cdf) {
    const auto xs = sample.sorted();
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double log1(double x) { return x > 0.0 ? std::max(std::log(x), 1.0) : 1.0; }
double log2_iter(double x) { return log1(log1(x)); }
double log3_iter(double x) { return log1(log2_iter(x)); }

AngleSummary prime_angle_summary(const AngleSeries& angles, std::span<const double> gammas) {
    AngleSummary s;
    const auto& rec = angles.records;
    if (rec.empty()) throw InputError("prime_angle_summary: no angles");
    s.primes = rec.size();
    s.max_prime = static_cast<double>(rec.back().p);
    const auto n = static_cast<double>(rec.size());
    const double l2 = log2_iter(s.max_prime);
    for (double g : gammas) {
        auto term = [&](std::size_t i) { return std::pow(2.0 * std::abs(std::cos(rec[i].theta)), g); };
        const double mean = deterministic_sum(0, rec.size(), term) / n;
        const double mertens = deterministic_sum(
            0, rec.size(), [&](std::size_t i) { return term(i) / static_cast<double>(rec[i].p); });
        s.gammas.push_back({g, mean, mertens, mertens / l2});
    }
    s.mean_two_cos = deterministic_sum(0, rec.size(), [&](std::size_t i) {
                         return 2.0 * std::cos(rec[i].theta);
                     }) / n;
    s.mean_two_cos_sq = deterministic_sum(0, rec.size(), [&](std::size_t i) {
                            const double c = 2.0 * std::cos(rec[i].theta);
                            return c * c;
                        }) / n;
    s.mean_abs_cos = deterministic_sum(0, rec.size(), [&](std::size_t i) {
                         return std::abs(std::cos(rec[i].theta));
                     }) / n;
    std::size_t half = 0;
    std::vector<double> thetas;
    thetas.reserve(rec.size());
    for (const auto& r : rec) {
        if (std::abs(std::cos(r.theta)) >= 0.5) ++half;
        thetas.push_back(r.theta);
    }
    s.frac_abs_cos_half = static_cast<double>(half) / n;
    s.ks = ks_statistic(Ecdf(std::move(thetas)),
                        [](double a) { return st_cdf(std::clamp(a, 0.0, std::numbers::pi)); });
    return s;
}

LogMomentEstimate prime_log_moments(const AngleSeries& angles, double x, double support_floor) {
    if (x > static_cast<double>(angles.limit)) {
        throw RangeError("prime_log_moments: cutoff beyond angle series");
    }
    LogMomentEstimate est;
    est.x = x;
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < angles.records.size(); ++i) {
        const auto& r = angles.records[i];
        if (static_cast<double>(r.p) > x) break;
        if (std::abs(r.a_p) > support_floor && r.a_p != 0.0) used.push_back(i);
    }
    est.primes_used = used.size();
    est.mu = deterministic_sum(0, used.size(), [&](std::size_t j) {
        const auto& r = angles.records[used[j]];
        return std::log(std::abs(r.a_p)) / static_cast<double>(r.p);
    });
    est.sigma2 = deterministic_sum(0, used.size(), [&](std::size_t j) {
        const auto& r = angles.records[used[j]];
        const double l = std::log(std::abs(r.a_p));
        const auto p = static_cast<double>(r.p);
        return l * l / p * (1.0 - 1.0 / p);
    });
    return est;
}

}  // namespace satotate
