#pragma once

#include "gridsde/kernel.hpp"
#include "gridsde/model.hpp"
#include "gridsde/partition.hpp"
#include "gridsde/rng.hpp"

#include <optional>
#include <vector>

namespace gridsde {

// Independent N(0, dt_k) increments, one p-vector per lattice cell.
struct BrownianIncrements {
    int p = 0;
    std::vector<double> data;  // cell-major
    int cells() const { return p == 0 ? 0 : static_cast<int>(data.size()) / p; }
    Vec increment(int k) const {
        Vec v(p);
        for (int i = 0; i < p; ++i) v[i] = data[static_cast<std::size_t>(k) * p + i];
        return v;
    }
};

// Unit normals per lattice cell; the limit solver scales them by sqrt(dt)
// and the state-dependent covariance factor.
struct UnitGaussians {
    int dim = 0;
    std::vector<double> data;
    int cells() const { return dim == 0 ? 0 : static_cast<int>(data.size()) / dim; }
    Vec at(int k) const {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = data[static_cast<std::size_t>(k) * dim + i];
        return v;
    }
};

struct JumpEvent {
    double t = 0.0;
    Vec z;  // mark, never zero
    Vec u;  // uniform [0,1]^d coordinate; empty until attach_marks
};

struct MarkedPointSet {
    std::vector<JumpEvent> events;  // sorted by time
    bool has_marks = false;
    bool simultaneous_times = false;  // floating-point tie occurred (kept, flagged)

    std::vector<double> times() const {
        std::vector<double> ts;
        ts.reserve(events.size());
        for (const auto& e : events) ts.push_back(e.t);
        return ts;
    }
};

// Piecewise-constant randomization process: xi^Pi(t) = xi_i on (t_{i-1}, t_i],
// and the zero vector at t = 0 (empty indicator sum).
struct GridSamplingRealization {
    Partition partition;
    int d = 1;
    std::vector<Vec> samples;

    const Vec& cell_sample(int i) const { return samples[i]; }
    Vec value(double t) const {
        if (t == 0.0) return Vec::Zero(d);
        return samples[partition.cell_index(t)];
    }
};

BrownianIncrements sample_brownian(const TimeLattice& lattice, int p, RngStream& stream);
UnitGaussians sample_unit_gaussians(const TimeLattice& lattice, int dim, RngStream& stream);

// Inhomogeneous Poisson events on (0, T] by thinning against the kernel's
// total-mass bound, marks drawn from the time-t mark law. Throws when the
// bound is missing, or when the kernel needs eps-truncation and has none.
MarkedPointSet sample_jumps(const LevyKernel& kernel, double horizon, RngStream& stream);

GridSamplingRealization sample_grid(const Partition& partition, int d, RngStream& stream);

// Attaches i.i.d. uniform [0,1]^d coordinates, independent of times and
// z marks. Throws if marks are already present.
MarkedPointSet attach_marks(MarkedPointSet points, int d, RngStream& stream);

// One path's complete stochastic input, reproducibly derived from
// (master_seed, path_index). The lattice refines the partition (grid mode)
// and contains every jump time.
struct NoiseRealization {
    TimeLattice lattice;
    MarkedPointSet jumps;
    BrownianIncrements brownian;                  // grid mode
    UnitGaussians zeta;                           // limit mode
    std::optional<GridSamplingRealization> grid;  // grid mode
    std::uint64_t master_seed = 0;
    std::uint64_t path_index = 0;
};

NoiseRealization make_grid_noise(const LevyKernel& kernel, int p, int d,
                                 const Partition& partition, double max_step,
                                 std::uint64_t master_seed, std::uint64_t path_index);

NoiseRealization make_limit_noise(const LevyKernel& kernel, int zeta_dim, int d,
                                  double horizon, double max_step, std::uint64_t master_seed,
                                  std::uint64_t path_index);

inline NoiseRealization make_grid_noise(const ModelSpec& model, const Partition& partition,
                                        double max_step, std::uint64_t master_seed,
                                        std::uint64_t path_index) {
    return make_grid_noise(model.kernel, model.p, model.policy.d, partition, max_step,
                           master_seed, path_index);
}

inline NoiseRealization make_limit_noise(const ModelSpec& model, double horizon,
                                         double max_step, std::uint64_t master_seed,
                                         std::uint64_t path_index) {
    return make_limit_noise(model.kernel, model.m, model.policy.d, horizon, max_step,
                            master_seed, path_index);
}

}  // namespace gridsde
