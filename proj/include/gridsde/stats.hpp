#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gridsde::stats {

// Online central moments up to order 4 (Welford-style updates), enough for
// standard errors of both the mean and the sample variance.
class Accumulator {
  public:
    void add(double x);
    void merge(const Accumulator& other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const;       // unbiased
    double se_mean() const;
    double se_variance() const;    // sqrt((m4 - s^4) / n)

  private:
    std::size_t n_ = 0;
    double mean_ = 0.0, m2_ = 0.0, m3_ = 0.0, m4_ = 0.0;
};

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);

// ---- distribution distances ------------------------------------------------

// One-sample Kolmogorov-Smirnov statistic against a CDF (samples need not be sorted).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
// Two-sample KS statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b);
// Two-sample Cramer-von Mises statistic (T = omega^2 form).
double cvm_statistic(std::vector<double> a, std::vector<double> b);
// |k-th raw moment difference|.
double moment_distance(std::span<const double> a, std::span<const double> b, int k);

// Asymptotic Kolmogorov survival function Q(x) = 2 sum (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);
// x with Q(x) = alpha.
double kolmogorov_quantile(double alpha);
// Critical KS value at level alpha: one-sample n_eff = n, two-sample n_eff = nm/(n+m).
double ks_critical_value(double alpha, double n_eff);
// p-value of a KS statistic.
double ks_p_value(double d, double n_eff);

// Regularized incomplete gamma P(a, x); chi-square CDF is P(k/2, x/2).
double gamma_p(double a, double x);
double chi_square_p_value(double statistic, int dof);

// ---- bootstrap ---------------------------------------------------------------

struct BootstrapCI {
    double lo = 0.0, hi = 0.0;
};

// Percentile CI of a statistic of one sample; CI is widened to contain the
// point estimate when resampling noise would exclude it.
BootstrapCI bootstrap_ci(std::span<const double> xs,
                         const std::function<double(std::span<const double>)>& statistic,
                         int resamples = 1000, std::uint64_t seed = 0xb001);

// Percentile CI of a two-sample statistic (both samples resampled).
BootstrapCI bootstrap_ci2(
    std::span<const double> a, std::span<const double> b,
    const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
    int resamples = 1000, std::uint64_t seed = 0xb002);

// ---- regression ----------------------------------------------------------------

struct LineFit {
    double intercept = 0.0, slope = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Weighted least squares for y ~ polynomial in x of given degree; weights are
// 1/se_i^2, and coefficient standard errors come from (X^T W X)^{-1}.
struct PolyFit {
    std::vector<double> coef;
    std::vector<double> se;
};
PolyFit fit_poly_weighted(std::span<const double> x, std::span<const double> y,
                          std::span<const double> se, int degree);

}  // namespace gridsde::stats
