#pragma once

#include "gridsde/solvers.hpp"

namespace gridsde {

// Driving system of orthogonal martingale measures on E = R^q x [0,1]^d:
// drivers 1..white_count form the white-noise group with intensity
// delta_0(dz) du ds, realized jointly through per-cell unit Gaussians and the
// state-dependent covariance factor; the optional last driver is the
// |z|-weighted compensated jump measure with intensity |z|^2 nu_s(dz) du ds.
struct MeasureSystem {
    int m = 1;
    int white_count = 0;
    bool jump_driver = false;
    UnitCubeRule u_rule;
    LevyKernel kernel;
    double horizon = 1.0;

    int ell() const { return white_count + (jump_driver ? 1 : 0); }
};

struct SystemCoefficients {
    // beta(s, y) in R^m
    std::function<Vec(double, const Vec&)> beta;
    // alpha(s, y, z, u) in R^{m x ell}; columns 1..white_count are the
    // white-noise integrands (z = 0 there), the last column the jump integrand
    std::function<Mat(double, const Vec&, const Vec&, const Vec&)> alpha;
    // asserted Lipschitz/growth constants (the martingale constant carries
    // the 4*ell normalization)
    double k_beta = 0.0;
    double k_alpha = 0.0;
    double k0 = 0.0;
};

struct PicardDiagnostics {
    std::vector<double> sup_gaps;  // sup_t |Y^{n+1}(t) - Y^n(t)| per iteration, n = 0, 1, ...
    int iterations = 0;
    bool converged = false;
};

// Builds the ell = p + 1 system of the limit dynamics: beta is the
// u-averaged drift, white columns carry a_h, the jump column carries
// |z|^{-1} gamma_h. Throws when the kernel is not square-integrable.
std::pair<MeasureSystem, SystemCoefficients> embed_limit_sde(const ComposedCoefficients& cc,
                                                             double horizon,
                                                             const UnitCubeRule& u_rule);

// Total intensity mass of the jump driver over [0,T] x E (trapezoid in time),
// which must agree with the kernel's own second-moment mass.
double jump_driver_intensity_mass(const MeasureSystem& system, int time_points = 257);

// Picard iteration on a frozen realization: Y^0 is the constant-y0 path
// (or constant initial_guess level, used by the uniqueness check; the
// initial condition stays y0), and Y^n integrates the coefficients at the
// previous iterate's left limits. Stops when the lattice sup-gap drops
// below tol * (1 + sup |Y^n|); with tol = 0 it runs exactly max_iter
// iterations and reports converged = false.
std::pair<PathLattice, PicardDiagnostics> picard_solve(const MeasureSystem& system,
                                                       const SystemCoefficients& coeffs,
                                                       const Vec& y0,
                                                       const NoiseRealization& realization,
                                                       int max_iter = 60, double tol = 1e-10,
                                                       const Vec* initial_guess = nullptr);

// One application of the iteration map to an arbitrary path (fixed-point check).
PathLattice picard_apply(const MeasureSystem& system, const SystemCoefficients& coeffs,
                         const Vec& y0, const NoiseRealization& realization,
                         const PathLattice& previous);

// K_(2i)^{2n} T^n / n! * e_gap1 with K_(2i)^2 = 2 (T k_beta^2 + k_alpha^2).
// k0 enters the companion constants below, not this factorial bound.
double iteration_bound(double k_beta, double k_alpha, double k0, double T, double e_gap1, int n);

struct PicardBoundConstants {
    double k1i_sq = 0.0;  // initial-gap constant: E sup|Y^1-Y^0|^2 <= k1i^2 (1 + E|Y0|^2)
    double k2i_sq = 0.0;  // contraction constant 2 (T k_beta^2 + k_alpha^2)
    double k3i_sq = 0.0;  // sup-moment constant 2 + 4 e^{2 k2i^2 T} k1i^2
};
PicardBoundConstants picard_bound_constants(double k_beta, double k_alpha, double k0, double T);

}  // namespace gridsde
