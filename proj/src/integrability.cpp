#include "gridsde/integrability.hpp"

#include "gridsde/rng.hpp"

#include <cmath>
#include <sstream>

namespace gridsde {

namespace {

[[noreturn]] void report_nonfinite(double s, const Vec& x, const Vec& u, const Vec* z) {
    std::ostringstream msg;
    msg << "non-finite coefficient value at s=" << s << " x=[" << x.transpose() << "] u=["
        << u.transpose() << "]";
    if (z) msg << " z=[" << z->transpose() << "]";
    throw NumericError(msg.str());
}

double g0_integrand(const ComposedCoefficients& cc, double s, const Vec& x, const Vec& u) {
    const Vec b = cc.drift(s, x, u);
    const Mat a = cc.diffusion(s, x, u);
    double v = b.squaredNorm() + a.squaredNorm();  // Frobenius norm squared
    if (!cc.model().kernel.is_zero()) {
        for (const auto& node : cc.model().kernel.compensator_nodes(s))
            v += node.w * cc.jump(s, x, u, node.z).squaredNorm();
    }
    if (!std::isfinite(v)) report_nonfinite(s, x, u, nullptr);
    return v;
}

}  // namespace

IntegrabilityReport probe_integrability(const ComposedCoefficients& cc, double horizon,
                                        const UnitCubeRule& u_rule,
                                        const IntegrabilityProbeConfig& config) {
    IntegrabilityReport rep;
    const Vec x0 = Vec::Zero(cc.m());

    // G0 profile and its L1 norm (trapezoid)
    rep.g0_times.resize(config.time_points);
    rep.g0_values.resize(config.time_points);
    for (int i = 0; i < config.time_points; ++i) {
        const double s = horizon * i / (config.time_points - 1);
        double g = 0.0;
        for (std::size_t k = 0; k < u_rule.nodes.size(); ++k)
            g += u_rule.weights[k] * g0_integrand(cc, s, x0, u_rule.nodes[k]);
        rep.g0_times[i] = s;
        rep.g0_values[i] = g;
    }
    const double h = horizon / (config.time_points - 1);
    for (int i = 0; i + 1 < config.time_points; ++i)
        rep.g0_l1 += 0.5 * h * (rep.g0_values[i] + rep.g0_values[i + 1]);

    // Lipschitz moduli over a random cloud of (s, x1, x2, u)
    RngStream cloud(config.seed, 0, StreamRole::quadrature);
    const auto& kernel = cc.model().kernel;
    for (int n = 0; n < config.cloud_size; ++n) {
        const double s = horizon * cloud.next_uniform();
        Vec x1(cc.m()), x2(cc.m());
        for (int i = 0; i < cc.m(); ++i) {
            x1[i] = config.cloud_radius * (2.0 * cloud.next_uniform() - 1.0);
            x2[i] = config.cloud_radius * (2.0 * cloud.next_uniform() - 1.0);
        }
        const double dist = (x1 - x2).norm();
        if (dist < 1e-9) continue;

        // joint per-u modulus at one random u
        const Vec u = cloud.next_uniform_vec(cc.d());
        double joint = (cc.drift(s, x1, u) - cc.drift(s, x2, u)).squaredNorm() +
                       (cc.diffusion(s, x1, u) - cc.diffusion(s, x2, u)).squaredNorm();
        if (!kernel.is_zero())
            for (const auto& node : kernel.compensator_nodes(s))
                joint += node.w * (cc.jump(s, x1, u, node.z) - cc.jump(s, x2, u, node.z)).squaredNorm();
        if (!std::isfinite(joint)) report_nonfinite(s, x1, u, nullptr);
        rep.k_lip = std::max(rep.k_lip, std::sqrt(joint) / dist);

        // u-averaged moduli
        double b_l1 = 0.0, a_l2 = 0.0, g_l2 = 0.0;
        for (std::size_t k = 0; k < u_rule.nodes.size(); ++k) {
            const Vec& un = u_rule.nodes[k];
            const double w = u_rule.weights[k];
            b_l1 += w * (cc.drift(s, x1, un) - cc.drift(s, x2, un)).norm();
            a_l2 += w * (cc.diffusion(s, x1, un) - cc.diffusion(s, x2, un)).squaredNorm();
            if (!kernel.is_zero())
                for (const auto& node : kernel.compensator_nodes(s))
                    g_l2 += w * node.w *
                            (cc.jump(s, x1, un, node.z) - cc.jump(s, x2, un, node.z)).squaredNorm();
        }
        rep.k_b = std::max(rep.k_b, b_l1 / dist);
        rep.k_a = std::max(rep.k_a, std::sqrt(a_l2) / dist);
        rep.k_gamma = std::max(rep.k_gamma, std::sqrt(g_l2) / dist);
        ++rep.sample_size;
    }

    std::ostringstream desc;
    desc << "uniform cloud, radius " << config.cloud_radius << ", " << rep.sample_size
         << " pairs, " << u_rule.description;
    rep.cloud_descriptor = desc.str();
    return rep;
}

Vec u_average_drift(const ComposedCoefficients& cc, double s, const Vec& x,
                    const UnitCubeRule& u_rule) {
    Vec acc = Vec::Zero(cc.m());
    for (std::size_t k = 0; k < u_rule.nodes.size(); ++k) {
        const Vec b = cc.drift(s, x, u_rule.nodes[k]);
        if (!b.allFinite()) report_nonfinite(s, x, u_rule.nodes[k], nullptr);
        acc += u_rule.weights[k] * b;
    }
    return acc;
}

std::pair<Mat, Mat> u_average_diffusion(const ComposedCoefficients& cc, double s, const Vec& x,
                                        const UnitCubeRule& u_rule) {
    Mat sigma = Mat::Zero(cc.m(), cc.m());
    for (std::size_t k = 0; k < u_rule.nodes.size(); ++k)
        sigma += u_rule.weights[k] * cc.diffusion_outer(s, x, u_rule.nodes[k]);
    if (!sigma.allFinite()) report_nonfinite(s, x, u_rule.nodes[0], nullptr);
    sigma = 0.5 * (sigma + Mat(sigma.transpose()));
    Mat factor = psd_cholesky(sigma);
    return {sigma, factor};
}

}  // namespace gridsde
