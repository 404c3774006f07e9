#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "satotate/arith.hpp"

namespace satotate {

/// Adaptive Simpson with Richardson correction; tol is absolute.
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol = 1e-12, int max_depth = 50);

/// Sato-Tate CDF alpha/pi - sin(2 alpha)/(2 pi); DomainError outside [0, pi].
double st_cdf(double alpha);
double st_density(double theta);

/// h(gamma) = (2/pi) int_0^pi (2|cos t|)^gamma sin^2 t dt by quadrature split at pi/2.
double h_gamma(double gamma);

struct LogMoments {
    double m1;  // E log(2|cos theta|)
    double m2;  // E log^2(2|cos theta|)
};

/// Quadrature of (2/pi) int_0^2 log^j(u) sqrt(1 - (u/2)^2) du, j = 1, 2.
LogMoments st_log_moments();

/// Each field evaluated two ways: closed form and quadrature.
struct STConstants {
    double h1;                // h(1) by quadrature
    double h1_closed;         // 8 / (3 pi)
    double clt_c;             // 1/2 + pi^2/12
    double clt_c_quadrature;  // m2 from st_log_moments
    double log_mean;          // m1, expected -1/2
    double abs_cos_moment;    // int_0^pi |cos t| sin^2 t dt by quadrature
    double signed_cos_moment; // int_0^pi cos t sin^2 t dt by quadrature
    double half_density;      // 2/3 - sqrt(3)/(2 pi)
    double half_density_quadrature;  // (4/pi) int_0^{pi/3} sin^2 t dt
};

STConstants st_constants();

double standard_normal_cdf(double z);

/// Sorted sample.
class Ecdf {
  public:
    /// InputError on an empty sample.
    explicit Ecdf(std::vector<double> sample);
    std::size_t size() const { return sorted_.size(); }
    std::span<const double> sorted() const { return sorted_; }
    /// Fraction of samples <= x.
    double operator()(double x) const;

  private:
    std::vector<double> sorted_;
};

/// Two-sided sup |F_n - F| over both one-sided limits at each sample point.
double ks_statistic(const Ecdf& sample, const std::function<double(double)>& cdf);

struct GammaSummary {
    double gamma;
    double mean;            // mean over primes of (2|cos theta_p|)^gamma
    double mertens_sum;     // sum of (2|cos theta_p|)^gamma / p
    double mertens_scaled;  // mertens_sum / log_2 x
};

struct AngleSummary {
    std::size_t primes = 0;
    double max_prime = 0;
    std::vector<GammaSummary> gammas;
    double mean_two_cos = 0;      // mean 2 cos theta
    double mean_two_cos_sq = 0;   // mean (2 cos theta)^2
    double mean_abs_cos = 0;      // mean |cos theta|
    double frac_abs_cos_half = 0; // fraction with |cos theta| >= 1/2
    double ks = 0;                // against st_cdf
};

AngleSummary prime_angle_summary(const AngleSeries& angles, std::span<const double> gammas);

struct LogMomentEstimate {
    double x = 0;
    double mu = 0;
    double sigma2 = 0;
    std::size_t primes_used = 0;
};

/// Sums over primes p <= x with |a_p| > support_floor.
LogMomentEstimate prime_log_moments(const AngleSeries& angles, double x, double support_floor = 0.0);

/// log_1 x = max(log x, 1); log_k x = log_1(log_{k-1} x).
double log1(double x);
double log2_iter(double x);
double log3_iter(double x);

}  // namespace satotate
