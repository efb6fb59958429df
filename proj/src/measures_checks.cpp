#include "gridsde/measures.hpp"

#include "gridsde/normal.hpp"
#include "gridsde/parallel.hpp"
#include "gridsde/report.hpp"
#include "gridsde/stats.hpp"

#include <array>
#include <cmath>

namespace gridsde {

namespace {

// per-path outputs of the identity suite
constexpr int kSlots = 17;

struct SuiteFields {
    // deterministic scalar integrands on [0,T] x [0,1]
    std::array<ScalarField, 4> g = {
        ScalarField([](double, const Vec&) { return 1.0; }),
        ScalarField([](double, const Vec& u) { return u[0] <= 0.5 ? 1.0 : 0.0; }),
        ScalarField([](double s, const Vec&) { return std::cos(2.0 * M_PI * s); }),
        ScalarField([](double, const Vec& u) { return u[0]; }),
    };
    // jump integrands on [0,T] x R_0 x [0,1]
    std::array<ScalarJumpField, 3> h = {
        ScalarJumpField([](double, const Vec&, const Vec&) { return 1.0; }),
        ScalarJumpField([](double, const Vec& z, const Vec&) { return z[0]; }),
        ScalarJumpField([](double s, const Vec& z, const Vec& u) {
            return std::cos(2.0 * M_PI * s) * u[0] * std::min(z.norm(), 1.0);
        }),
    };
};

}  // namespace

ExperimentReport check_moment_identities(const MomentIdentityConfig& config) {
    const int p = 2;
    const int d = 1;
    const LevyKernel kernel = compound_poisson_kernel(
        5.0, {{Vec::Constant(1, 1.0), 0.5}, {Vec::Constant(1, -1.0), 0.5}});
    const Partition partition = Partition::uniform(config.horizon, config.partition_cells);
    const SuiteFields suite;
    const UnitCubeRule u_rule = default_cube_rule(d);

    auto per_path = [&](std::size_t i) -> std::array<double, kSlots> {
        std::array<double, kSlots> out{};
        const auto noise =
            make_grid_noise(kernel, p, d, partition, config.lattice_step, config.seed, i);
        const auto& lattice = noise.lattice;
        const auto& xi = *noise.grid;
        const int end = lattice.cells();
        int slot = 0;

        // isometry per g: (int g dM_B^(1))^2 - int g^2 dM_D, zero conditional mean
        std::array<double, 4> b1{};
        for (int k = 0; k < 4; ++k) {
            b1[k] = integrate_MB_grid(lattice, xi, noise.brownian, suite.g[k], 0)[end];
            const auto& g = suite.g[k];
            const double quad = integrate_MD(
                lattice, xi,
                [&g](double s, const Vec& u) {
                    const double v = g(s, u);
                    return v * v;
                })[end];
            out[slot++] = b1[k] * b1[k] - quad;
        }
        // zero mean of the martingale-measure integrals themselves
        out[slot++] = b1[1];
        out[slot++] = b1[2];
        // cross-driver orthogonality l=1 vs l=2
        const double c2 = integrate_MB_grid(lattice, xi, noise.brownian, suite.g[1], 1)[end];
        const double c3 = integrate_MB_grid(lattice, xi, noise.brownian, suite.g[2], 1)[end];
        out[slot++] = b1[0] * c2;
        out[slot++] = b1[1] * c3;

        // jump identities
        for (int k = 0; k < 3; ++k) {
            const auto& h = suite.h[k];
            const double comp =
                integrate_MJ_grid(lattice, xi, noise.jumps, kernel, h, true)[end];
            const double quad = integrate_muJ_grid(
                lattice, xi, kernel,
                [&h](double s, const Vec& z, const Vec& u) {
                    const double v = h(s, z, u);
                    return v * v;
                })[end];
            out[slot++] = comp;                    // compensated zero mean
            out[slot++] = comp * comp - quad;      // isometry vs mu_J^Pi
        }
        // orthogonality of Brownian vs compensated jump integrals
        const double j0 =
            integrate_MJ_grid(lattice, xi, noise.jumps, kernel, suite.h[0], true)[end];
        out[slot++] = b1[0] * j0;

        // exact total mass of M_D
        out[slot++] = std::abs(integrate_MD(lattice, xi, suite.g[0])[end] - config.horizon);

        // limit-measure zero mean (h == 1, R = infinity)
        const auto limit_noise =
            make_limit_noise(kernel, 0, d, config.horizon, config.lattice_step,
                             config.seed ^ 0x4c494d49ULL, i);
        out[slot++] = integrate_MJ_limit(limit_noise.lattice, limit_noise.jumps, kernel,
                                         suite.h[0], true, kNoTruncation, u_rule)[end];
        return out;
    };

    auto outs = mc::run_paths(static_cast<std::size_t>(config.n_paths), per_path);

    std::array<stats::Accumulator, kSlots> acc;
    double mass_max = 0.0;
    for (const auto& row : outs) {
        for (int s = 0; s < kSlots; ++s) acc[s].add(row[s]);
        mass_max = std::max(mass_max, row[15]);
    }

    ExperimentReport report;
    report.experiment = "moments";
    report.seed = config.seed;
    auto mean_check = [&](const std::string& name, int slot) {
        const double se = acc[slot].se_mean();
        CheckResult c;
        c.name = name;
        c.statistic = acc[slot].mean();
        c.ci_lo = c.statistic - 3.0 * se;
        c.ci_hi = c.statistic + 3.0 * se;
        c.threshold = 3.0 * se;
        c.verdict = std::abs(c.statistic) <= c.threshold ? "pass" : "fail";
        c.note = "zero within 3*SE";
        report.checks.push_back(c);
    };
    const char* gnames[4] = {"one", "half-box", "cos-s", "u1"};
    for (int k = 0; k < 4; ++k)
        mean_check(std::string("ito-isometry MB[") + gnames[k] + "]", k);
    mean_check("zero-mean MB[half-box]", 4);
    mean_check("zero-mean MB[cos-s]", 5);
    mean_check("orthogonality MB1/MB2 [one,half-box]", 6);
    mean_check("orthogonality MB1/MB2 [half-box,cos-s]", 7);
    const char* hnames[3] = {"one", "z", "cos-s*u*(|z|^1)"};
    for (int k = 0; k < 3; ++k) {
        mean_check(std::string("zero-mean compensated MJ[") + hnames[k] + "]", 8 + 2 * k);
        mean_check(std::string("ito-isometry MJ[") + hnames[k] + "]", 9 + 2 * k);
    }
    mean_check("orthogonality MB1/MJ [one,one]", 14);
    {
        CheckResult c;
        c.name = "M_D total mass == T (exact)";
        c.statistic = mass_max;
        c.threshold = 1e-12 * std::max(1.0, config.horizon);
        c.verdict = c.statistic <= c.threshold ? "pass" : "fail";
        c.note = "max |mass - T| over all realizations";
        report.checks.push_back(c);
    }
    mean_check("zero-mean limit compensated MJ[one]", 16);
    return report;
}

}  // namespace gridsde
