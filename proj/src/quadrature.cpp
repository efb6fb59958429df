#include "gridsde/quadrature.hpp"

#include "gridsde/rng.hpp"

#include <cmath>

namespace gridsde {

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_01: order must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int k = 0; k < half; ++k) {
        // Newton on P_n from the Chebyshev initial guess
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[k] = 0.5 * (1.0 - x);  // map [-1,1] -> [0,1], ascending
        nodes[n - 1 - k] = 0.5 * (1.0 + x);
        weights[k] = 0.5 * w;
        weights[n - 1 - k] = 0.5 * w;
    }
}

UnitCubeRule gauss_legendre_cube(int d, int order) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("gauss_legendre_cube: bad dimension");
    std::vector<double> x, w;
    gauss_legendre_01(order, x, w);

    UnitCubeRule rule;
    rule.d = d;
    rule.description = "tensor Gauss-Legendre order " + std::to_string(order);
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(order);
    rule.nodes.reserve(count);
    rule.weights.reserve(count);
    std::vector<int> idx(d, 0);
    for (std::size_t i = 0; i < count; ++i) {
        Vec u(d);
        double weight = 1.0;
        for (int j = 0; j < d; ++j) {
            u[j] = x[idx[j]];
            weight *= w[idx[j]];
        }
        rule.nodes.push_back(u);
        rule.weights.push_back(weight);
        for (int j = 0; j < d; ++j) {
            if (++idx[j] < order) break;
            idx[j] = 0;
        }
    }
    return rule;
}

namespace {
constexpr int kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};

double van_der_corput(std::uint64_t i, int base) {
    double r = 0.0, f = 1.0 / base;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f /= base;
    }
    return r;
}
}  // namespace

UnitCubeRule halton_cube(int d, int n, std::uint64_t rotation_seed) {
    if (d < 1 || d > kMaxDim) throw std::invalid_argument("halton_cube: bad dimension");
    RngStream shift(rotation_seed, 0, StreamRole::quadrature);
    Vec rot = shift.next_uniform_vec(d);

    UnitCubeRule rule;
    rule.d = d;
    rule.description = "rotated Halton, " + std::to_string(n) + " nodes";
    rule.nodes.reserve(n);
    rule.weights.assign(n, 1.0 / n);
    for (int i = 0; i < n; ++i) {
        Vec u(d);
        for (int j = 0; j < d; ++j) {
            double v = van_der_corput(static_cast<std::uint64_t>(i) + 1, kPrimes[j]) + rot[j];
            if (v >= 1.0) v -= 1.0;
            u[j] = v;
        }
        rule.nodes.push_back(u);
    }
    return rule;
}

UnitCubeRule default_cube_rule(int d) {
    return d <= 2 ? gauss_legendre_cube(d, 16) : halton_cube(d, 1024);
}

}  // namespace gridsde
