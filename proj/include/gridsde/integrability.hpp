#pragma once

#include "gridsde/model.hpp"
#include "gridsde/quadrature.hpp"

#include <utility>
#include <vector>

namespace gridsde {

// Empirical probes of the wellposedness hypotheses. Estimates, never proofs:
// a finite point cloud can only falsify a Lipschitz assumption.
struct IntegrabilityReport {
    std::vector<double> g0_times;
    std::vector<double> g0_values;  // G0(s) on the time lattice
    double g0_l1 = 0.0;             // trapezoid estimate of int_0^T G0(s) ds

    // largest observed moduli over the probe cloud
    double k_lip = 0.0;      // joint modulus (squared-sum form, per-u)
    double k_b = 0.0;        // u-averaged drift modulus (L1 in u)
    double k_a = 0.0;        // u-averaged diffusion modulus (L2 in u)
    double k_gamma = 0.0;    // u-averaged jump modulus (L2 in u x nu)

    int sample_size = 0;
    std::string cloud_descriptor;
};

struct IntegrabilityProbeConfig {
    int time_points = 257;       // uniform G0 lattice on [0, T]
    int cloud_size = 256;        // (s, x1, x2, u) probe draws
    double cloud_radius = 4.0;   // x components uniform in [-radius, radius]
    std::uint64_t seed = 20241010;
};

// G0 profile (Assumption hypothesis at x = 0) plus finite-difference
// Lipschitz estimates. Throws NumericError naming the offending probe point
// when any evaluation is non-finite.
IntegrabilityReport probe_integrability(const ComposedCoefficients& cc, double horizon,
                                        const UnitCubeRule& u_rule,
                                        const IntegrabilityProbeConfig& config = {});

// Quadrature estimate of int_{[0,1]^d} b_h(s, x, u) du.
Vec u_average_drift(const ComposedCoefficients& cc, double s, const Vec& x,
                    const UnitCubeRule& u_rule);

// Sigma(s,x) = int A_h(s,x,u) du together with a factor C, C C^T = Sigma.
std::pair<Mat, Mat> u_average_diffusion(const ComposedCoefficients& cc, double s, const Vec& x,
                                        const UnitCubeRule& u_rule);

}  // namespace gridsde
