#include "gridsde/solvers.hpp"

#include <cmath>

namespace gridsde {

PathLattice::PathLattice(TimeLattice lattice, int m)
    : lattice_(std::move(lattice)), m_(m) {
    pre_.assign(lattice_.cells() + 1, Vec::Zero(m));
    post_.assign(lattice_.cells() + 1, Vec::Zero(m));
}

double PathLattice::sup_norm() const {
    double s = 0.0;
    for (const auto& v : post_) s = std::max(s, v.norm());
    return s;
}

double PathLattice::sup_distance(const PathLattice& other) const {
    double s = 0.0;
    for (std::size_t k = 0; k < post_.size(); ++k)
        s = std::max(s, (post_[k] - other.post_[k]).norm());
    return s;
}

namespace {

void guard_state(const Vec& x, double t) {
    if (!x.allFinite() || x.norm() > kBlowUpGuard) throw BlowUpError(t);
}

// u-averaged jump compensator sum_z w_z sum_u w_u gamma(s, x, u, z);
// z outer / u inner so the Picard embedding reproduces the same arithmetic.
Vec jump_compensator_u_avg(const ComposedCoefficients& cc, double s, const Vec& x,
                           const std::vector<MarkNode>& nodes, const UnitCubeRule& u_rule) {
    Vec comp = Vec::Zero(cc.m());
    for (const auto& node : nodes) {
        Vec inner = Vec::Zero(cc.m());
        for (std::size_t i = 0; i < u_rule.nodes.size(); ++i)
            inner += u_rule.weights[i] * cc.jump(s, x, u_rule.nodes[i], node.z);
        comp += node.w * inner;
    }
    return comp;
}

}  // namespace

PathLattice euler_grid_sampling(const ComposedCoefficients& cc, const NoiseRealization& noise) {
    if (!noise.grid.has_value())
        throw std::invalid_argument("euler_grid_sampling: noise lacks a grid-sampling realization");
    const GridSamplingRealization& xi = *noise.grid;
    if (!noise.lattice.refines(xi.partition))
        throw std::invalid_argument("euler_grid_sampling: lattice does not refine the partition");
    if (noise.brownian.cells() != noise.lattice.cells())
        throw std::invalid_argument("euler_grid_sampling: Brownian increments do not match lattice");

    const LevyKernel& kernel = cc.model().kernel;
    const bool jumps_present = !kernel.is_zero();
    std::vector<MarkNode> cached;
    if (jumps_present && kernel.homogeneous) cached = kernel.compensator_nodes(0.0);

    PathLattice path(noise.lattice, cc.m());
    Vec x = cc.model().x0;
    path.set(0, x, x);

    std::size_t j = 0;
    const auto& events = noise.jumps.events;
    for (int k = 0; k < noise.lattice.cells(); ++k) {
        const double s = noise.lattice.time(k);
        const double dt = noise.lattice.dt(k);
        const double right = noise.lattice.time(k + 1);
        const Vec u = xi.value(right);

        Vec incr = cc.drift(s, x, u) * dt + cc.diffusion(s, x, u) * noise.brownian.increment(k);
        if (jumps_present) {
            const auto& nodes = kernel.homogeneous ? cached : kernel.compensator_nodes(s);
            Vec comp = Vec::Zero(cc.m());
            for (const auto& node : nodes) comp += node.w * cc.jump(s, x, u, node.z);
            incr -= dt * comp;
        }

        const Vec pre = x + incr;
        x = pre;
        while (j < events.size() && events[j].t <= right) {
            if (events[j].t != right)
                throw std::invalid_argument("euler_grid_sampling: jump time missing from lattice");
            x += cc.jump(events[j].t, pre, xi.value(events[j].t), events[j].z);
            ++j;
        }
        guard_state(x, right);
        path.set(k + 1, pre, x);
    }
    return path;
}

ValuePath evaluate_rm_form(const ComposedCoefficients& cc, const PathLattice& path,
                           const NoiseRealization& noise) {
    if (!noise.grid.has_value())
        throw std::invalid_argument("evaluate_rm_form: noise lacks a grid-sampling realization");
    if (path.nodes() != noise.lattice.cells() + 1 ||
        path.lattice().times() != noise.lattice.times())
        throw std::invalid_argument("evaluate_rm_form: path and noise lattices differ");
    const GridSamplingRealization& xi = *noise.grid;
    const TimeLattice& lattice = noise.lattice;
    const int m = cc.m();

    // time-integral terms see the post-jump state at the cell's left endpoint
    auto state_at = [&](double s) -> const Vec& {
        return path.state(lattice.index_at_or_before(s));
    };

    const VecPath drift_term = integrate_MD_vec(
        lattice, xi, [&](double s, const Vec& u) { return cc.drift(s, state_at(s), u); }, m);

    std::vector<VecPath> diff_terms;
    diff_terms.reserve(cc.p());
    for (int l = 0; l < cc.p(); ++l)
        diff_terms.push_back(integrate_MB_grid_vec(
            lattice, xi,
            noise.brownian,
            [&](double s, const Vec& u) { return Vec(cc.diffusion(s, state_at(s), u).col(l)); },
            l, m));

    // raw jump sum at event left limits, compensator at cell states
    VecPath jump_raw(lattice.cells() + 1, Vec::Zero(m));
    {
        Vec acc = Vec::Zero(m);
        std::size_t j = 0;
        const auto& events = noise.jumps.events;
        for (int k = 0; k < lattice.cells(); ++k) {
            const double right = lattice.time(k + 1);
            while (j < events.size() && events[j].t <= right) {
                const Vec& left = path.left_limit(k + 1);
                acc += cc.jump(events[j].t, left, xi.value(events[j].t), events[j].z);
                ++j;
            }
            jump_raw[k + 1] = acc;
        }
    }
    VecPath jump_comp(lattice.cells() + 1, Vec::Zero(m));
    if (!cc.model().kernel.is_zero())
        jump_comp = integrate_muJ_grid_vec(
            lattice, xi, cc.model().kernel,
            [&](double s, const Vec& z, const Vec& u) { return cc.jump(s, state_at(s), u, z); },
            m);

    ValuePath residual(lattice.cells() + 1, 0.0);
    const Vec& x0 = cc.model().x0;
    for (int k = 0; k <= lattice.cells(); ++k) {
        Vec rhs = x0 + drift_term[k] + jump_raw[k] - jump_comp[k];
        for (const auto& term : diff_terms) rhs += term[k];
        residual[k] = (path.state(k) - rhs).norm();
    }
    return residual;
}

PathLattice euler_limit(const ComposedCoefficients& cc, const NoiseRealization& noise,
                        const UnitCubeRule& u_rule) {
    if (noise.zeta.cells() != noise.lattice.cells())
        throw std::invalid_argument("euler_limit: noise lacks per-cell unit Gaussians");
    if (noise.zeta.dim != cc.m())
        throw std::invalid_argument("euler_limit: Gaussian dimension does not match state");
    const LevyKernel& kernel = cc.model().kernel;
    const bool jumps_present = !kernel.is_zero();
    if (jumps_present && !noise.jumps.has_marks)
        throw std::invalid_argument("euler_limit: jump events lack uniform marks");
    std::vector<MarkNode> cached;
    if (jumps_present && kernel.homogeneous) cached = kernel.compensator_nodes(0.0);

    PathLattice path(noise.lattice, cc.m());
    Vec x = cc.model().x0;
    path.set(0, x, x);

    std::size_t j = 0;
    const auto& events = noise.jumps.events;
    for (int k = 0; k < noise.lattice.cells(); ++k) {
        const double s = noise.lattice.time(k);
        const double dt = noise.lattice.dt(k);
        const double right = noise.lattice.time(k + 1);

        Vec incr = u_average_drift(cc, s, x, u_rule) * dt;
        const auto [sigma, factor] = u_average_diffusion(cc, s, x, u_rule);
        incr += increment_MB_limit(factor, dt, noise.zeta.at(k));
        if (jumps_present) {
            const auto& nodes = kernel.homogeneous ? cached : kernel.compensator_nodes(s);
            incr -= dt * jump_compensator_u_avg(cc, s, x, nodes, u_rule);
        }

        const Vec pre = x + incr;
        x = pre;
        while (j < events.size() && events[j].t <= right) {
            if (events[j].t != right)
                throw std::invalid_argument("euler_limit: jump time missing from lattice");
            x += cc.jump(events[j].t, pre, events[j].u, events[j].z);
            ++j;
        }
        guard_state(x, right);
        path.set(k + 1, pre, x);
    }
    return path;
}

}  // namespace gridsde
