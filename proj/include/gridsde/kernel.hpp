#pragma once

#include "gridsde/rng.hpp"
#include "gridsde/types.hpp"

#include <functional>
#include <vector>

namespace gridsde {

// Quadrature node for integrals against nu_s(dz): sum_i w_i g(z_i).
struct MarkNode {
    Vec z;
    double w = 0.0;
};

// Time-indexed family of jump-size measures nu_t(dz) on R^q \ {0}.
// Either genuinely finite-activity, or the |z| > eps restriction of an
// infinite-activity family; in the latter case eps > 0 and the discarded
// small-jump variance is reported so the bias can be bounded.
struct LevyKernel {
    int q = 1;
    bool finite_activity = true;   // false: the un-truncated family has infinite mass
    bool homogeneous = false;      // nu_t independent of t (lets callers cache nodes)
    double eps = 0.0;              // truncation level; 0 means none applied
    double truncated_variance = 0.0;  // int_0^T int_{|z|<=eps} |z|^2 nu_t(dz) dt

    std::function<double(double)> total_mass;  // Lambda(t) = nu_t(R^q_0)
    double total_mass_bound = 0.0;             // Lambda_max over [0, T]
    std::function<Vec(double, RngStream&)> sample_mark;  // z ~ nu_t / Lambda(t)
    std::function<double(double)> second_moment;         // int |z|^2 nu_t(dz)
    std::function<std::vector<MarkNode>(double)> compensator_nodes;

    bool is_zero() const { return total_mass_bound == 0.0; }
};

// Trapezoid estimate of int_0^T int |z|^2 nu_t(dz) dt on a uniform lattice.
double kernel_second_moment_mass(const LevyKernel& kernel, double horizon, int lattice = 257);

// Throws NumericError when the square-integrability mass exceeds cap.
void require_square_integrable(const LevyKernel& kernel, double horizon, double cap = 1e12);

// ---- factories ----------------------------------------------------------

LevyKernel zero_kernel(int q = 1);

// Homogeneous compound Poisson with rate lambda and a finite mark table
// {(z_i, prob_i)}.
LevyKernel compound_poisson_kernel(double lambda, std::vector<std::pair<Vec, double>> marks);

// Inhomogeneous rate Lambda(t) with a fixed mark table; bound must dominate
// Lambda on [0, T].
LevyKernel inhomogeneous_kernel(std::function<double(double)> rate, double rate_bound,
                                std::vector<std::pair<Vec, double>> marks);

// eps-truncation of the one-sided power-law family nu(dz) = c z^{-3/2} dz on
// (0, 1]; infinite activity, square-integrable. Exercises the truncation
// reporting path. quad_points controls the compensator rule resolution.
LevyKernel power_law_kernel(double c, double eps, int quad_points = 64);

}  // namespace gridsde
