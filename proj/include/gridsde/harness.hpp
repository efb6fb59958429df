#pragma once

#include "gridsde/catalog.hpp"
#include "gridsde/picard.hpp"
#include "gridsde/report.hpp"
#include "gridsde/solvers.hpp"
#include "gridsde/stats.hpp"

#include <span>

namespace gridsde {

// ---- bounded test-function catalog (limit-theorem harness) ----------------

struct TestFunction {
    std::string id;
    double sup_norm = 1.0;
    std::function<double(double, const Vec&)> eval;  // (s, u)
};

struct JumpTestFunction {
    std::string id;
    double sup_norm = 1.0;
    std::function<double(double, const Vec&, const Vec&)> eval;  // (s, z, u)
};

// ids: "zero", "one", "half-box", "cos-s", "bump-u", "cos-s-box-u"
TestFunction test_function(const std::string& id);
// ids: "zero", "one", "half-box-u", "radial-z", "cos-s-radial-z"
JumpTestFunction jump_test_function(const std::string& id);

// Components of the R^m-valued test process; every function comes from the
// bounded catalog above.
struct TestComponentSpec {
    std::string f0 = "zero";
    std::vector<std::string> fl;            // one id per Brownian driver
    std::string fp1 = "zero";               // small-jump region (|z|-weighted, compensated)
    std::string fp2 = "zero";               // big-jump region (raw)
};

struct TestProcessSpec {
    std::string name;
    std::vector<TestComponentSpec> components;
    double truncation = kNoTruncation;  // R
};

// Evaluates the test process at eval_times. Grid mode when noise carries a
// grid-sampling realization, limit mode otherwise (zeta dim must then be
// components * p). Returns [component][eval_time].
std::vector<std::vector<double>> build_test_process(const TestProcessSpec& spec,
                                                    const LevyKernel& kernel, int p,
                                                    const NoiseRealization& noise,
                                                    const UnitCubeRule& u_rule,
                                                    std::span<const double> eval_times);

// ---- distances -------------------------------------------------------------

struct DistanceReport {
    std::string metric;  // "ks" | "cvm" | "moment-k"
    double value = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
    std::size_t n_a = 0, n_b = 0;
};

// Two-sample distance with a percentile bootstrap CI (1000 resamples).
// Requires at least 1000 samples per side.
DistanceReport distributional_distance(std::span<const double> a, std::span<const double> b,
                                       const std::string& metric, int bootstrap_resamples = 1000);
// One-sample distance against a closed-form law.
DistanceReport distributional_distance(std::span<const double> a,
                                       const std::function<double(double)>& cdf,
                                       const std::string& metric, int bootstrap_resamples = 1000);

// ---- studies ---------------------------------------------------------------

struct MeshDistanceRow {
    int cells = 0;
    double mesh = 0.0;
    double distance = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
};

struct MeshConvergenceResult {
    std::vector<MeshDistanceRow> rows;   // coarse to fine
    double slope_vs_cells = 0.0;         // log distance vs log cells
    bool monotone_within_ci = true;      // non-increasing up to CI overlap
};

// Marginal distance of X^{Pi,h}(eval_time) to the limit marginal per mesh.
// For "linear-gaussian" the limit marginal is the Gaussian from the moment
// oracle; otherwise limit-mode samples are simulated (two-sample KS).
MeshConvergenceResult mesh_convergence_study(const ModelSpec& model,
                                             std::span<const int> mesh_cells, int n_paths,
                                             double eval_time, double lattice_step,
                                             std::uint64_t seed,
                                             std::map<std::string, std::vector<double>>*
                                                 sample_dumps = nullptr);

// ---- martingale problem ------------------------------------------------------

// Twice continuously differentiable function with compact support and
// closed-form derivatives.
struct C2Function {
    std::string id;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;
};

// Polynomial bump ((1 - |x-c|^2 / r^2)_+)^3.
C2Function c2_bump(const Vec& center, double radius, const std::string& id = "bump");
std::vector<C2Function> c2_catalog(int m);

// (L_h f)(s, x) by u- and z-quadrature.
double generator_apply(const ComposedCoefficients& cc, const C2Function& f, double s,
                       const Vec& x, const UnitCubeRule& u_rule);

struct MartingaleResidual {
    double mean = 0.0;
    double se = 0.0;
    int n_paths = 0;
    int blown_up = 0;
};

// MC estimate of E[f(X(t)) - f(x0) - int_0^t (L_h f)(s, X(s-)) ds] on the
// limit dynamics with Euler step lattice_step.
MartingaleResidual martingale_residual(const ModelSpec& model, const C2Function& f, double t,
                                       int n_paths, double lattice_step, std::uint64_t seed);

// ---- averaging collapse --------------------------------------------------------

struct AveragingRow {
    int cells = 0;
    double variance = 0.0;
    double se = 0.0;       // standard error of the variance estimate
    double expected = 0.0; // T^2 / n
};

// Var(X(T) - x - sigma B(T)) for the pure-drift dynamics on a uniform grid.
AveragingRow averaging_collapse(int cells, double horizon, double sigma, int n_paths,
                                std::uint64_t seed);

// ---- empirical sampling measure -------------------------------------------------

struct TimeBox {
    double t_lo = 0.0, t_hi = 1.0;
    Vec u_lo, u_hi;  // box in [0,1]^d
};

// rho-hat(B x C) = sum_i |B \cap (t_{i-1}, t_i]| 1{xi_i in C}.
double empirical_sampling_measure(const GridSamplingRealization& xi, const TimeBox& box);
// sup over the family of |rho-hat - lambda(B) lambda^d(C)|.
double empirical_measure_discrepancy(const GridSamplingRealization& xi,
                                     std::span<const TimeBox> family);

std::vector<TimeBox> default_rectangle_family(double horizon, int d);

struct DiscrepancyRow {
    int cells = 0;
    double mean_discrepancy = 0.0;
    double se = 0.0;
};

// Mean sup-discrepancy per mesh over n_realizations grid draws.
std::vector<DiscrepancyRow> lln_discrepancy_study(std::span<const int> mesh_cells,
                                                  double horizon, int d, int n_realizations,
                                                  std::uint64_t seed);

}  // namespace gridsde
