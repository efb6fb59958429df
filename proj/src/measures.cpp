#include "gridsde/measures.hpp"

#include <cmath>

namespace gridsde {

namespace {

void require_refinement(const TimeLattice& lattice, const GridSamplingRealization& xi) {
    if (!lattice.refines(xi.partition))
        throw std::invalid_argument("lattice does not refine the sampling partition");
}

void require_finite(double v, double s) {
    if (!std::isfinite(v))
        throw NumericError("non-finite integrand value at s=" + std::to_string(s));
}

// Events must sit on lattice nodes; walks cells and events in lockstep.
template <typename OnCell, typename OnEvent>
void sweep(const TimeLattice& lattice, const MarkedPointSet& jumps, OnCell&& on_cell,
           OnEvent&& on_event) {
    std::size_t j = 0;
    for (int k = 0; k < lattice.cells(); ++k) {
        on_cell(k);
        const double right = lattice.time(k + 1);
        while (j < jumps.events.size() && jumps.events[j].t <= right) {
            if (jumps.events[j].t != right)
                throw std::invalid_argument("jump time not adjoined to the lattice");
            on_event(k, jumps.events[j]);
            ++j;
        }
    }
}

}  // namespace

ValuePath integrate_MD(const TimeLattice& lattice, const GridSamplingRealization& xi,
                       const ScalarField& f) {
    require_refinement(lattice, xi);
    ValuePath path(lattice.cells() + 1, 0.0);
    double acc = 0.0;
    for (int k = 0; k < lattice.cells(); ++k) {
        const double v = f(lattice.time(k), xi.value(lattice.time(k + 1)));
        require_finite(v, lattice.time(k));
        acc += v * lattice.dt(k);
        path[k + 1] = acc;
    }
    return path;
}

VecPath integrate_MD_vec(const TimeLattice& lattice, const GridSamplingRealization& xi,
                         const VecField& f, int m) {
    require_refinement(lattice, xi);
    VecPath path(lattice.cells() + 1, Vec::Zero(m));
    Vec acc = Vec::Zero(m);
    for (int k = 0; k < lattice.cells(); ++k) {
        acc += f(lattice.time(k), xi.value(lattice.time(k + 1))) * lattice.dt(k);
        path[k + 1] = acc;
    }
    return path;
}

ValuePath integrate_MB_grid(const TimeLattice& lattice, const GridSamplingRealization& xi,
                            const BrownianIncrements& brownian, const ScalarField& g, int l) {
    require_refinement(lattice, xi);
    if (l < 0 || l >= brownian.p) throw std::invalid_argument("integrate_MB_grid: bad driver index");
    ValuePath path(lattice.cells() + 1, 0.0);
    double acc = 0.0;
    for (int k = 0; k < lattice.cells(); ++k) {
        const double v = g(lattice.time(k), xi.value(lattice.time(k + 1)));
        require_finite(v, lattice.time(k));
        acc += v * brownian.data[static_cast<std::size_t>(k) * brownian.p + l];
        path[k + 1] = acc;
    }
    return path;
}

VecPath integrate_MB_grid_vec(const TimeLattice& lattice, const GridSamplingRealization& xi,
                              const BrownianIncrements& brownian, const VecField& g, int l,
                              int m) {
    require_refinement(lattice, xi);
    if (l < 0 || l >= brownian.p) throw std::invalid_argument("integrate_MB_grid: bad driver index");
    VecPath path(lattice.cells() + 1, Vec::Zero(m));
    Vec acc = Vec::Zero(m);
    for (int k = 0; k < lattice.cells(); ++k) {
        acc += g(lattice.time(k), xi.value(lattice.time(k + 1))) *
               brownian.data[static_cast<std::size_t>(k) * brownian.p + l];
        path[k + 1] = acc;
    }
    return path;
}

ValuePath integrate_muJ_grid(const TimeLattice& lattice, const GridSamplingRealization& xi,
                             const LevyKernel& kernel, const ScalarJumpField& h) {
    require_refinement(lattice, xi);
    if (!kernel.compensator_nodes)
        throw std::invalid_argument("kernel lacks a compensator quadrature");
    ValuePath path(lattice.cells() + 1, 0.0);
    if (kernel.is_zero()) return path;
    std::vector<MarkNode> cached;
    if (kernel.homogeneous) cached = kernel.compensator_nodes(0.0);
    double acc = 0.0;
    for (int k = 0; k < lattice.cells(); ++k) {
        const double s = lattice.time(k);
        const Vec u = xi.value(lattice.time(k + 1));
        const auto& nodes = kernel.homogeneous ? cached : kernel.compensator_nodes(s);
        double cell = 0.0;
        for (const auto& node : nodes) cell += node.w * h(s, node.z, u);
        require_finite(cell, s);
        acc += cell * lattice.dt(k);
        path[k + 1] = acc;
    }
    return path;
}

VecPath integrate_muJ_grid_vec(const TimeLattice& lattice, const GridSamplingRealization& xi,
                               const LevyKernel& kernel, const VecJumpField& h, int m) {
    require_refinement(lattice, xi);
    VecPath path(lattice.cells() + 1, Vec::Zero(m));
    if (kernel.is_zero()) return path;
    std::vector<MarkNode> cached;
    if (kernel.homogeneous) cached = kernel.compensator_nodes(0.0);
    Vec acc = Vec::Zero(m);
    for (int k = 0; k < lattice.cells(); ++k) {
        const double s = lattice.time(k);
        const Vec u = xi.value(lattice.time(k + 1));
        const auto& nodes = kernel.homogeneous ? cached : kernel.compensator_nodes(s);
        Vec cell = Vec::Zero(m);
        for (const auto& node : nodes) cell += node.w * h(s, node.z, u);
        acc += cell * lattice.dt(k);
        path[k + 1] = acc;
    }
    return path;
}

ValuePath integrate_MJ_grid(const TimeLattice& lattice, const GridSamplingRealization& xi,
                            const MarkedPointSet& jumps, const LevyKernel& kernel,
                            const ScalarJumpField& h, bool compensated) {
    require_refinement(lattice, xi);
    ValuePath path(lattice.cells() + 1, 0.0);
    double acc = 0.0;
    sweep(
        lattice, jumps, [&](int k) { path[k + 1] = acc; },
        [&](int k, const JumpEvent& ev) {
            const double v = h(ev.t, ev.z, xi.value(ev.t));
            require_finite(v, ev.t);
            acc += v;
            path[k + 1] = acc;
        });
    if (compensated) {
        const ValuePath comp = integrate_muJ_grid(lattice, xi, kernel, h);
        for (std::size_t k = 0; k < path.size(); ++k) path[k] -= comp[k];
    }
    return path;
}

Vec increment_MB_limit(const Mat& factor, double dt, RngStream& stream) {
    return increment_MB_limit(factor, dt, stream.next_normal_vec(static_cast<int>(factor.rows())));
}

Vec increment_MB_limit(const Mat& factor, double dt, const Vec& zeta) {
    return Vec(std::sqrt(dt) * (factor * zeta));
}

ValuePath integrate_muJ_limit(const TimeLattice& lattice, const LevyKernel& kernel,
                              const ScalarJumpField& h, double truncation,
                              const UnitCubeRule& u_rule) {
    ValuePath path(lattice.cells() + 1, 0.0);
    if (kernel.is_zero()) return path;
    std::vector<MarkNode> cached;
    if (kernel.homogeneous) cached = kernel.compensator_nodes(0.0);
    double acc = 0.0;
    for (int k = 0; k < lattice.cells(); ++k) {
        const double s = lattice.time(k);
        const auto& nodes = kernel.homogeneous ? cached : kernel.compensator_nodes(s);
        double cell = 0.0;
        for (const auto& node : nodes) {
            const double zn = node.z.norm();
            if (zn > truncation) continue;
            double u_avg = 0.0;
            for (std::size_t i = 0; i < u_rule.nodes.size(); ++i)
                u_avg += u_rule.weights[i] * h(s, node.z, u_rule.nodes[i]);
            cell += node.w * zn * u_avg;
        }
        require_finite(cell, s);
        acc += cell * lattice.dt(k);
        path[k + 1] = acc;
    }
    return path;
}

ValuePath integrate_MJ_limit(const TimeLattice& lattice, const MarkedPointSet& jumps,
                             const LevyKernel& kernel, const ScalarJumpField& h,
                             bool compensated, double truncation, const UnitCubeRule& u_rule) {
    if (!jumps.has_marks && !jumps.events.empty())
        throw std::invalid_argument("integrate_MJ_limit: jump events lack uniform marks");
    if (!(truncation > 0.0)) throw std::invalid_argument("integrate_MJ_limit: truncation R <= 0");
    ValuePath path(lattice.cells() + 1, 0.0);
    double acc = 0.0;
    sweep(
        lattice, jumps, [&](int k) { path[k + 1] = acc; },
        [&](int k, const JumpEvent& ev) {
            const double zn = ev.z.norm();
            const double v = h(ev.t, ev.z, ev.u);
            require_finite(v, ev.t);
            acc += zn <= truncation ? v * zn : v;
            path[k + 1] = acc;
        });
    if (compensated) {
        const ValuePath comp = integrate_muJ_limit(lattice, kernel, h, truncation, u_rule);
        for (std::size_t k = 0; k < path.size(); ++k) path[k] -= comp[k];
    }
    return path;
}

}  // namespace gridsde
