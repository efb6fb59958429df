#include "gridsde/stats.hpp"

#include "gridsde/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gridsde::stats {

void Accumulator::add(double x) {
    const double n1 = static_cast<double>(n_);
    ++n_;
    const double n = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void Accumulator::merge(const Accumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    const double d2 = delta * delta, d3 = d2 * delta, d4 = d3 * delta;
    const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + other.m3_ + d3 * na * nb * (na - nb) / (n * n) +
                      3.0 * delta * (na * other.m2_ - nb * m2_) / n;
    const double m4 = m4_ + other.m4_ +
                      d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                      4.0 * delta * (na * other.m3_ - nb * m3_) / n;
    mean_ += delta * nb / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += other.n_;
}

double Accumulator::variance() const { return n_ > 1 ? m2_ / (n_ - 1) : 0.0; }

double Accumulator::se_mean() const { return n_ > 1 ? std::sqrt(variance() / n_) : 0.0; }

double Accumulator::se_variance() const {
    if (n_ < 2) return 0.0;
    const double n = static_cast<double>(n_);
    const double m2 = m2_ / n;
    const double m4 = m4_ / n;
    const double v = (m4 - m2 * m2) / n;
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

double mean(std::span<const double> xs) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    Accumulator acc;
    for (double x : xs) acc.add(x);
    return acc.variance();
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max(f - i / n, (i + 1) / n - f));
    }
    return d;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= t) ++i;
        while (j < b.size() && b[j] <= t) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double cvm_statistic(std::vector<double> a, std::vector<double> b) {
    // two-sample T = U / (nm(n+m)) - (4mn - 1) / (6(m+n)), with
    // U = n sum (r_i - i)^2 + m sum (s_j - j)^2 over combined ranks
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 || m == 0) throw std::invalid_argument("cvm_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<std::pair<double, int>> all;
    all.reserve(n + m);
    for (double x : a) all.push_back({x, 0});
    for (double x : b) all.push_back({x, 1});
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    double u = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < all.size(); ++k) {
        const double rank = static_cast<double>(k + 1);
        if (all[k].second == 0) {
            ++ia;
            const double diff = rank - static_cast<double>(ia);
            u += static_cast<double>(n) * diff * diff;
        } else {
            ++ib;
            const double diff = rank - static_cast<double>(ib);
            u += static_cast<double>(m) * diff * diff;
        }
    }
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return u / (nn * mm * (nn + mm)) - (4.0 * mm * nn - 1.0) / (6.0 * (mm + nn));
}

double moment_distance(std::span<const double> a, std::span<const double> b, int k) {
    auto mk = [k](std::span<const double> xs) {
        double acc = 0.0;
        for (double x : xs) acc += std::pow(x, k);
        return acc / static_cast<double>(xs.size());
    };
    return std::abs(mk(a) - mk(b));
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    double q = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * (k % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * k * k * x * x);
        q += term;
        if (std::abs(term) < 1e-16) break;
    }
    return std::clamp(q, 0.0, 1.0);
}

double kolmogorov_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("kolmogorov_quantile: alpha outside (0,1)");
    double lo = 1e-3, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_q(mid) > alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double ks_critical_value(double alpha, double n_eff) {
    return kolmogorov_quantile(alpha) / std::sqrt(n_eff);
}

double ks_p_value(double d, double n_eff) { return kolmogorov_q(d * std::sqrt(n_eff)); }

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        // series representation
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // continued fraction for Q, modified Lentz
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return 1.0 - std::exp(-x + a * std::log(x) - gln) * h;
}

double chi_square_p_value(double statistic, int dof) {
    return 1.0 - gamma_p(0.5 * dof, 0.5 * statistic);
}

namespace {
BootstrapCI percentile_ci(std::vector<double>& values, double point) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const std::size_t lo = static_cast<std::size_t>(0.025 * (n - 1));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(0.975 * (n - 1)));
    BootstrapCI ci{values[lo], values[hi]};
    ci.lo = std::min(ci.lo, point);
    ci.hi = std::max(ci.hi, point);
    return ci;
}

std::vector<double> resample(std::span<const double> xs, RngStream& stream) {
    std::vector<double> out(xs.size());
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i)
        out[i] = xs[std::min(n - 1, static_cast<std::size_t>(stream.next_uniform() * n))];
    return out;
}
}  // namespace

BootstrapCI bootstrap_ci(std::span<const double> xs,
                         const std::function<double(std::span<const double>)>& statistic,
                         int resamples, std::uint64_t seed) {
    RngStream stream(seed, 0, StreamRole::quadrature);
    std::vector<double> values;
    values.reserve(resamples);
    for (int r = 0; r < resamples; ++r) values.push_back(statistic(resample(xs, stream)));
    return percentile_ci(values, statistic(xs));
}

BootstrapCI bootstrap_ci2(
    std::span<const double> a, std::span<const double> b,
    const std::function<double(std::span<const double>, std::span<const double>)>& statistic,
    int resamples, std::uint64_t seed) {
    RngStream stream(seed, 0, StreamRole::quadrature);
    std::vector<double> values;
    values.reserve(resamples);
    for (int r = 0; r < resamples; ++r)
        values.push_back(statistic(resample(a, stream), resample(b, stream)));
    return percentile_ci(values, statistic(a, b));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: bad input");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

PolyFit fit_poly_weighted(std::span<const double> x, std::span<const double> y,
                          std::span<const double> se, int degree) {
    const int n = static_cast<int>(x.size());
    const int k = degree + 1;
    if (n < k || y.size() != x.size() || se.size() != x.size())
        throw std::invalid_argument("fit_poly_weighted: bad input");
    Eigen::MatrixXd design(n, k);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        const double w = 1.0 / std::max(se[i], 1e-300);
        double xp = 1.0;
        for (int j = 0; j < k; ++j) {
            design(i, j) = w * xp;
            xp *= x[i];
        }
        rhs(i) = w * y[i];
    }
    const Eigen::MatrixXd gram = design.transpose() * design;
    const Eigen::MatrixXd cov = gram.inverse();
    const Eigen::VectorXd coef = cov * (design.transpose() * rhs);
    PolyFit fit;
    for (int j = 0; j < k; ++j) {
        fit.coef.push_back(coef(j));
        fit.se.push_back(std::sqrt(std::max(0.0, cov(j, j))));
    }
    return fit;
}

}  // namespace gridsde::stats
