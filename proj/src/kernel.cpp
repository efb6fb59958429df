#include "gridsde/kernel.hpp"

#include <cmath>

namespace gridsde {

double kernel_second_moment_mass(const LevyKernel& kernel, double horizon, int lattice) {
    if (kernel.is_zero()) return 0.0;
    double acc = 0.0;
    const double h = horizon / (lattice - 1);
    for (int i = 0; i < lattice; ++i) {
        const double t = horizon * i / (lattice - 1);
        const double v = kernel.second_moment(t);
        acc += (i == 0 || i == lattice - 1) ? 0.5 * v : v;
    }
    return acc * h;
}

void require_square_integrable(const LevyKernel& kernel, double horizon, double cap) {
    const double mass = kernel_second_moment_mass(kernel, horizon);
    if (!std::isfinite(mass) || mass > cap)
        throw NumericError("Levy kernel fails the square-integrability cap: mass=" +
                           std::to_string(mass));
}

LevyKernel zero_kernel(int q) {
    LevyKernel k;
    k.q = q;
    k.homogeneous = true;
    k.total_mass = [](double) { return 0.0; };
    k.total_mass_bound = 0.0;
    k.sample_mark = [q](double, RngStream&) { return Vec(Vec::Zero(q)); };
    k.second_moment = [](double) { return 0.0; };
    k.compensator_nodes = [](double) { return std::vector<MarkNode>{}; };
    return k;
}

namespace {
std::function<Vec(double, RngStream&)> table_sampler(std::vector<std::pair<Vec, double>> marks) {
    return [marks](double, RngStream& stream) {
        const double u = stream.next_uniform();
        double acc = 0.0;
        for (const auto& [z, prob] : marks) {
            acc += prob;
            if (u <= acc) return z;
        }
        return marks.back().first;
    };
}
}  // namespace

LevyKernel compound_poisson_kernel(double lambda, std::vector<std::pair<Vec, double>> marks) {
    LevyKernel k = inhomogeneous_kernel([lambda](double) { return lambda; }, lambda, std::move(marks));
    k.homogeneous = true;
    return k;
}

LevyKernel inhomogeneous_kernel(std::function<double(double)> rate, double rate_bound,
                                std::vector<std::pair<Vec, double>> marks) {
    if (marks.empty()) throw std::invalid_argument("kernel: mark table empty");
    double ptot = 0.0, msq = 0.0;
    const int q = static_cast<int>(marks.front().first.size());
    for (const auto& [z, prob] : marks) {
        if (z.norm() == 0.0) throw std::invalid_argument("kernel: marks must be nonzero");
        check_dim(z, q, "kernel mark");
        ptot += prob;
        msq += prob * z.squaredNorm();
    }
    if (std::abs(ptot - 1.0) > 1e-12) throw std::invalid_argument("kernel: mark probabilities must sum to 1");

    LevyKernel k;
    k.q = q;
    k.total_mass = rate;
    k.total_mass_bound = rate_bound;
    k.sample_mark = table_sampler(marks);
    k.second_moment = [rate, msq](double t) { return rate(t) * msq; };
    k.compensator_nodes = [rate, marks](double t) {
        const double lam = rate(t);
        std::vector<MarkNode> nodes;
        nodes.reserve(marks.size());
        for (const auto& [z, prob] : marks) nodes.push_back({z, lam * prob});
        return nodes;
    };
    return k;
}

LevyKernel power_law_kernel(double c, double eps, int quad_points) {
    if (eps <= 0.0)
        throw std::invalid_argument("power_law_kernel: infinite activity requires eps > 0");
    // nu(dz) = c z^{-3/2} dz on (0,1]; restricted to (eps, 1]:
    //   mass      = 2c (eps^{-1/2} - 1)
    //   tail CDF  : P(Z <= z) = (eps^{-1/2} - z^{-1/2}) / (eps^{-1/2} - 1)
    const double lam = 2.0 * c * (1.0 / std::sqrt(eps) - 1.0);
    const double a = 1.0 / std::sqrt(eps);

    LevyKernel k;
    k.q = 1;
    k.finite_activity = false;
    k.homogeneous = true;
    k.eps = eps;
    k.truncated_variance = (2.0 * c / 3.0) * std::pow(eps, 1.5);
    k.total_mass = [lam](double) { return lam; };
    k.total_mass_bound = lam;
    k.sample_mark = [a](double, RngStream& stream) {
        const double u = stream.next_uniform();
        const double inv = a - u * (a - 1.0);  // z^{-1/2}
        Vec z(1);
        z[0] = 1.0 / (inv * inv);
        return z;
    };
    k.second_moment = [c, eps](double) {
        return (2.0 * c / 3.0) * (1.0 - std::pow(eps, 1.5));
    };
    // midpoint rule in the z^{-1/2} variable, where the density is uniform
    k.compensator_nodes = [a, lam, quad_points](double) {
        std::vector<MarkNode> nodes;
        nodes.reserve(quad_points);
        for (int i = 0; i < quad_points; ++i) {
            const double u = (i + 0.5) / quad_points;
            const double inv = a - u * (a - 1.0);
            Vec z(1);
            z[0] = 1.0 / (inv * inv);
            nodes.push_back({z, lam / quad_points});
        }
        return nodes;
    };
    return k;
}

}  // namespace gridsde
