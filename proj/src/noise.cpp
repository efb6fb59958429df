#include "gridsde/noise.hpp"

#include <cmath>

namespace gridsde {

BrownianIncrements sample_brownian(const TimeLattice& lattice, int p, RngStream& stream) {
    BrownianIncrements inc;
    inc.p = p;
    inc.data.resize(static_cast<std::size_t>(lattice.cells()) * p);
    for (int k = 0; k < lattice.cells(); ++k) {
        const double sd = std::sqrt(lattice.dt(k));
        for (int i = 0; i < p; ++i)
            inc.data[static_cast<std::size_t>(k) * p + i] = sd * stream.next_normal();
    }
    return inc;
}

UnitGaussians sample_unit_gaussians(const TimeLattice& lattice, int dim, RngStream& stream) {
    UnitGaussians z;
    z.dim = dim;
    z.data.resize(static_cast<std::size_t>(lattice.cells()) * dim);
    for (double& v : z.data) v = stream.next_normal();
    return z;
}

MarkedPointSet sample_jumps(const LevyKernel& kernel, double horizon, RngStream& stream) {
    MarkedPointSet points;
    if (kernel.is_zero()) {
        if (!kernel.finite_activity)
            throw std::invalid_argument("sample_jumps: infinite-activity kernel without truncation");
        return points;
    }
    if (!kernel.finite_activity && kernel.eps <= 0.0)
        throw std::invalid_argument("sample_jumps: infinite-activity kernel requires eps > 0");
    if (kernel.total_mass_bound <= 0.0)
        throw std::invalid_argument("sample_jumps: missing total-mass bound");

    const double bound = kernel.total_mass_bound;
    double t = 0.0;
    double prev = -1.0;
    while (true) {
        t -= std::log(stream.next_uniform()) / bound;
        if (t > horizon) break;
        if (stream.next_uniform() * bound <= kernel.total_mass(t)) {
            JumpEvent ev;
            ev.t = t;
            ev.z = kernel.sample_mark(t, stream);
            if (ev.t == prev) points.simultaneous_times = true;
            prev = ev.t;
            points.events.push_back(std::move(ev));
        }
    }
    return points;
}

GridSamplingRealization sample_grid(const Partition& partition, int d, RngStream& stream) {
    GridSamplingRealization xi{partition, d, {}};
    xi.samples.reserve(partition.cells());
    for (int i = 0; i < partition.cells(); ++i) xi.samples.push_back(stream.next_uniform_vec(d));
    return xi;
}

MarkedPointSet attach_marks(MarkedPointSet points, int d, RngStream& stream) {
    if (points.has_marks) throw std::invalid_argument("attach_marks: marks already present");
    for (auto& ev : points.events) ev.u = stream.next_uniform_vec(d);
    points.has_marks = true;
    return points;
}

NoiseRealization make_grid_noise(const LevyKernel& kernel, int p, int d,
                                 const Partition& partition, double max_step,
                                 std::uint64_t master_seed, std::uint64_t path_index) {
    auto jumps_stream = derive_stream(master_seed, path_index, StreamRole::jumps);
    MarkedPointSet jumps = sample_jumps(kernel, partition.horizon(), jumps_stream);

    TimeLattice lattice = TimeLattice::refine(partition, max_step).with_times(jumps.times());

    auto grid_stream = derive_stream(master_seed, path_index, StreamRole::gridsample);
    GridSamplingRealization xi = sample_grid(partition, d, grid_stream);

    auto brownian_stream = derive_stream(master_seed, path_index, StreamRole::brownian);
    BrownianIncrements inc = sample_brownian(lattice, p, brownian_stream);

    return NoiseRealization{std::move(lattice), std::move(jumps),       std::move(inc),
                            UnitGaussians{},    std::move(xi),          master_seed,
                            path_index};
}

NoiseRealization make_limit_noise(const LevyKernel& kernel, int zeta_dim, int d,
                                  double horizon, double max_step, std::uint64_t master_seed,
                                  std::uint64_t path_index) {
    auto jumps_stream = derive_stream(master_seed, path_index, StreamRole::jumps);
    MarkedPointSet jumps = sample_jumps(kernel, horizon, jumps_stream);
    auto marks_stream = derive_stream(master_seed, path_index, StreamRole::marks);
    jumps = attach_marks(std::move(jumps), d, marks_stream);

    const int cells = std::max(1, static_cast<int>(std::ceil(horizon / max_step - 1e-12)));
    TimeLattice lattice = TimeLattice::uniform(horizon, cells).with_times(jumps.times());

    auto zeta_stream = derive_stream(master_seed, path_index, StreamRole::brownian);
    UnitGaussians zeta = sample_unit_gaussians(lattice, zeta_dim, zeta_stream);

    return NoiseRealization{std::move(lattice), std::move(jumps), BrownianIncrements{},
                            std::move(zeta),    std::nullopt,     master_seed,
                            path_index};
}

}  // namespace gridsde
