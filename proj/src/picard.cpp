#include "gridsde/picard.hpp"

#include <cmath>

namespace gridsde {

std::pair<MeasureSystem, SystemCoefficients> embed_limit_sde(const ComposedCoefficients& cc,
                                                             double horizon,
                                                             const UnitCubeRule& u_rule) {
    const int m = cc.m();
    const int p = cc.p();
    const bool jumps = !cc.model().kernel.is_zero();
    if (jumps) require_square_integrable(cc.model().kernel, horizon);

    MeasureSystem system;
    system.m = m;
    system.white_count = p;
    system.jump_driver = jumps;
    system.u_rule = u_rule;
    system.kernel = cc.model().kernel;
    system.horizon = horizon;

    SystemCoefficients coeffs;
    coeffs.beta = [cc, u_rule](double s, const Vec& y) {
        return u_average_drift(cc, s, y, u_rule);
    };
    const int ell = system.ell();
    coeffs.alpha = [cc, p, ell, m](double s, const Vec& y, const Vec& z, const Vec& u) {
        Mat a = Mat::Zero(m, ell);
        const double zn = z.size() == 0 ? 0.0 : z.norm();
        if (zn == 0.0) {
            a.leftCols(p) = cc.diffusion(s, y, u);
        } else if (ell > p) {
            a.col(p) = cc.jump(s, y, u, z) / zn;
        }
        return a;
    };
    return {std::move(system), std::move(coeffs)};
}

double jump_driver_intensity_mass(const MeasureSystem& system, int time_points) {
    if (!system.jump_driver) return 0.0;
    double acc = 0.0;
    const double h = system.horizon / (time_points - 1);
    for (int i = 0; i < time_points; ++i) {
        const double t = system.horizon * i / (time_points - 1);
        double v = 0.0;
        for (const auto& node : system.kernel.compensator_nodes(t))
            v += node.w * node.z.squaredNorm();
        acc += (i == 0 || i == time_points - 1) ? 0.5 * v : v;
    }
    return acc * h;
}

namespace {

struct SystemEvaluator {
    const MeasureSystem& system;
    const SystemCoefficients& coeffs;
    std::vector<MarkNode> cached_nodes;
    Vec zero_mark;

    SystemEvaluator(const MeasureSystem& sys, const SystemCoefficients& cf)
        : system(sys), coeffs(cf), zero_mark(Vec::Zero(sys.kernel.q)) {
        if (system.jump_driver && system.kernel.homogeneous)
            cached_nodes = system.kernel.compensator_nodes(0.0);
    }

    // covariance of the white group at (s, y): sum_u w_u (alpha_w alpha_w^T)
    Mat white_covariance(double s, const Vec& y) const {
        Mat g = Mat::Zero(system.m, system.m);
        for (std::size_t i = 0; i < system.u_rule.nodes.size(); ++i) {
            const Mat a = coeffs.alpha(s, y, zero_mark, system.u_rule.nodes[i]);
            const Mat white = a.leftCols(system.white_count);
            g += system.u_rule.weights[i] * (white * white.transpose());
        }
        return g;
    }

    // int_E alpha_jump |z| mu-structure drift: sum_z w_z sum_u w_u alpha_col |z|
    Vec jump_compensator(double s, const Vec& y) const {
        Vec comp = Vec::Zero(system.m);
        const auto nodes =
            system.kernel.homogeneous ? cached_nodes : system.kernel.compensator_nodes(s);
        const int col = system.white_count;
        for (const auto& node : nodes) {
            const double zn = node.z.norm();
            Vec inner = Vec::Zero(system.m);
            for (std::size_t i = 0; i < system.u_rule.nodes.size(); ++i)
                inner += system.u_rule.weights[i] *
                         Vec(coeffs.alpha(s, y, node.z, system.u_rule.nodes[i]).col(col) * zn);
            comp += node.w * inner;
        }
        return comp;
    }

    Vec jump_event_increment(const JumpEvent& ev, const Vec& y_left) const {
        const double zn = ev.z.norm();
        return Vec(coeffs.alpha(ev.t, y_left, ev.z, ev.u).col(system.white_count) * zn);
    }
};

}  // namespace

PathLattice picard_apply(const MeasureSystem& system, const SystemCoefficients& coeffs,
                         const Vec& y0, const NoiseRealization& realization,
                         const PathLattice& previous) {
    SystemEvaluator eval(system, coeffs);
    const TimeLattice& lattice = realization.lattice;
    if (system.white_count > 0 && realization.zeta.cells() != lattice.cells())
        throw std::invalid_argument("picard: realization lacks per-cell unit Gaussians");
    if (system.jump_driver && !realization.jumps.has_marks)
        throw std::invalid_argument("picard: jump events lack uniform marks");

    PathLattice next(lattice, system.m);
    Vec x = y0;
    next.set(0, x, x);
    std::size_t j = 0;
    const auto& events = realization.jumps.events;
    for (int k = 0; k < lattice.cells(); ++k) {
        const double s = lattice.time(k);
        const double dt = lattice.dt(k);
        const double right = lattice.time(k + 1);
        const Vec& yk = previous.state(k);

        Vec incr = coeffs.beta ? Vec(coeffs.beta(s, yk) * dt) : Vec(Vec::Zero(system.m));
        if (system.white_count > 0) {
            const Mat factor = psd_cholesky(eval.white_covariance(s, yk));
            incr += increment_MB_limit(factor, dt, realization.zeta.at(k));
        }
        if (system.jump_driver) incr -= dt * eval.jump_compensator(s, yk);

        const Vec pre = x + incr;
        x = pre;
        while (j < events.size() && events[j].t <= right) {
            if (events[j].t != right)
                throw std::invalid_argument("picard: jump time missing from lattice");
            if (system.jump_driver)
                x += eval.jump_event_increment(events[j], previous.left_limit(k + 1));
            ++j;
        }
        if (!x.allFinite()) throw NumericError("picard: non-finite iterate");
        next.set(k + 1, pre, x);
    }
    return next;
}

std::pair<PathLattice, PicardDiagnostics> picard_solve(const MeasureSystem& system,
                                                       const SystemCoefficients& coeffs,
                                                       const Vec& y0,
                                                       const NoiseRealization& realization,
                                                       int max_iter, double tol,
                                                       const Vec* initial_guess) {
    if (tol < 0.0) throw std::invalid_argument("picard_solve: tol must be >= 0");
    PathLattice current(realization.lattice, system.m);
    const Vec level = initial_guess ? *initial_guess : y0;
    for (int k = 0; k < current.nodes(); ++k) current.set(k, level, level);

    PicardDiagnostics diag;
    for (int n = 0; n < max_iter; ++n) {
        PathLattice next = picard_apply(system, coeffs, y0, realization, current);
        const double gap = next.sup_distance(current);
        diag.sup_gaps.push_back(gap);
        diag.iterations = n + 1;
        current = std::move(next);
        if (tol > 0.0 && gap < tol * (1.0 + current.sup_norm())) {
            diag.converged = true;
            break;
        }
    }
    return {std::move(current), std::move(diag)};
}

double iteration_bound(double k_beta, double k_alpha, double /*k0*/, double T, double e_gap1,
                       int n) {
    const double k2i_sq = 2.0 * (T * k_beta * k_beta + k_alpha * k_alpha);
    double bound = e_gap1;
    for (int k = 1; k <= n; ++k) bound *= k2i_sq * T / k;
    return bound;
}

PicardBoundConstants picard_bound_constants(double k_beta, double k_alpha, double k0, double T) {
    PicardBoundConstants c;
    c.k1i_sq = 4.0 * std::max(k0 * k0, T * T * k_beta * k_beta + T * k_alpha * k_alpha);
    c.k2i_sq = 2.0 * (T * k_beta * k_beta + k_alpha * k_alpha);
    c.k3i_sq = 2.0 + 4.0 * std::exp(2.0 * c.k2i_sq * T) * c.k1i_sq;
    return c;
}

}  // namespace gridsde
