#include "gridsde/harness.hpp"

#include "gridsde/normal.hpp"
#include "gridsde/parallel.hpp"

#include <cmath>

namespace gridsde {

TestFunction test_function(const std::string& id) {
    if (id == "zero") return {id, 0.0, [](double, const Vec&) { return 0.0; }};
    if (id == "one") return {id, 1.0, [](double, const Vec&) { return 1.0; }};
    if (id == "half-box")
        return {id, 1.0, [](double, const Vec& u) { return u[0] <= 0.5 ? 1.0 : 0.0; }};
    if (id == "cos-s")
        return {id, 1.0, [](double s, const Vec&) { return std::cos(2.0 * M_PI * s); }};
    if (id == "bump-u") {
        // 16 (u(1-u))^2 peaks at 1 and vanishes at the cube faces
        return {id, 1.0, [](double, const Vec& u) {
                    const double w = u[0] * (1.0 - u[0]);
                    return 16.0 * w * w;
                }};
    }
    if (id == "cos-s-box-u")
        return {id, 1.0, [](double s, const Vec& u) {
                    return std::cos(2.0 * M_PI * s) * (u[0] <= 0.5 ? 1.0 : 0.0);
                }};
    throw std::invalid_argument("unknown (or unbounded) test function '" + id + "'");
}

JumpTestFunction jump_test_function(const std::string& id) {
    if (id == "zero") return {id, 0.0, [](double, const Vec&, const Vec&) { return 0.0; }};
    if (id == "one") return {id, 1.0, [](double, const Vec&, const Vec&) { return 1.0; }};
    if (id == "half-box-u")
        return {id, 1.0,
                [](double, const Vec&, const Vec& u) { return u[0] <= 0.5 ? 1.0 : 0.0; }};
    if (id == "radial-z")
        return {id, 1.0, [](double, const Vec& z, const Vec&) {
                    const double r = z.norm();
                    return 2.0 * r / (1.0 + r * r);
                }};
    if (id == "cos-s-radial-z")
        return {id, 1.0, [](double s, const Vec& z, const Vec& u) {
                    const double r = z.norm();
                    return std::cos(2.0 * M_PI * s) * (2.0 * r / (1.0 + r * r)) *
                           (u[0] <= 0.5 ? 1.0 : 0.0);
                }};
    throw std::invalid_argument("unknown (or unbounded) jump test function '" + id + "'");
}

namespace {

double path_value_at(const ValuePath& path, const TimeLattice& lattice, double t) {
    return path[lattice.index_at_or_before(t)];
}

}  // namespace

std::vector<std::vector<double>> build_test_process(const TestProcessSpec& spec,
                                                    const LevyKernel& kernel, int p,
                                                    const NoiseRealization& noise,
                                                    const UnitCubeRule& u_rule,
                                                    std::span<const double> eval_times) {
    const int m = static_cast<int>(spec.components.size());
    const double truncation = spec.truncation;
    if (!(truncation > 0.0)) throw std::invalid_argument("build_test_process: R <= 0");
    const TimeLattice& lattice = noise.lattice;
    const bool grid_mode = noise.grid.has_value();

    std::vector<std::vector<double>> out(m);
    for (int k = 0; k < m; ++k) {
        const TestComponentSpec& comp = spec.components[k];
        if (static_cast<int>(comp.fl.size()) != p)
            throw std::invalid_argument("build_test_process: need one f_l per Brownian driver");
        const TestFunction f0 = test_function(comp.f0);
        std::vector<TestFunction> fl;
        for (const auto& id : comp.fl) fl.push_back(test_function(id));
        const JumpTestFunction fp1 = jump_test_function(comp.fp1);
        const JumpTestFunction fp2 = jump_test_function(comp.fp2);

        auto small_h = [&](double s, const Vec& z, const Vec& u) {
            return z.norm() <= truncation ? fp1.eval(s, z, u) * z.norm() : 0.0;
        };
        auto big_h = [&](double s, const Vec& z, const Vec& u) {
            return z.norm() > truncation ? fp2.eval(s, z, u) : 0.0;
        };

        ValuePath total(lattice.cells() + 1, 0.0);
        if (grid_mode) {
            const auto& xi = *noise.grid;
            const ValuePath det = integrate_MD(lattice, xi, f0.eval);
            std::vector<ValuePath> white;
            for (int l = 0; l < p; ++l)
                white.push_back(integrate_MB_grid(lattice, xi, noise.brownian, fl[l].eval, l));
            // raw big-jump part plus compensated |z|-weighted small-jump part
            const ValuePath small = integrate_MJ_grid(lattice, xi, noise.jumps, kernel,
                                                      small_h, /*compensated=*/true);
            const ValuePath big = integrate_MJ_grid(lattice, xi, noise.jumps, kernel, big_h,
                                                    /*compensated=*/false);
            for (int i = 0; i <= lattice.cells(); ++i)
                total[i] = det[i] + small[i] + big[i];
            for (const auto& w : white)
                for (int i = 0; i <= lattice.cells(); ++i) total[i] += w[i];
        } else {
            // deterministic ds du term
            double acc = 0.0;
            for (int c = 0; c < lattice.cells(); ++c) {
                double val = 0.0;
                for (std::size_t i = 0; i < u_rule.nodes.size(); ++i)
                    val += u_rule.weights[i] * f0.eval(lattice.time(c), u_rule.nodes[i]);
                acc += val * lattice.dt(c);
                total[c + 1] += acc;
            }
            // white terms: per driver l the conditional increment over a cell
            // is N(0, dt * int f_l^2 du), realized from the cell's unit normals
            if (noise.zeta.dim != m * p)
                throw std::invalid_argument("build_test_process: zeta dim must be m*p");
            for (int l = 0; l < p; ++l) {
                double w_acc = 0.0;
                ValuePath wpath(lattice.cells() + 1, 0.0);
                for (int c = 0; c < lattice.cells(); ++c) {
                    double var = 0.0;
                    for (std::size_t i = 0; i < u_rule.nodes.size(); ++i) {
                        const double v = fl[l].eval(lattice.time(c), u_rule.nodes[i]);
                        var += u_rule.weights[i] * v * v;
                    }
                    const Vec zc = noise.zeta.at(c);
                    w_acc += std::sqrt(std::max(0.0, var) * lattice.dt(c)) * zc[l * m + k];
                    wpath[c + 1] = w_acc;
                }
                for (int i = 0; i <= lattice.cells(); ++i) total[i] += wpath[i];
            }
            // regions carry different functions, so each call masks the other
            auto small_mask = [&](double s, const Vec& z, const Vec& u) {
                return z.norm() <= truncation ? fp1.eval(s, z, u) : 0.0;
            };
            const ValuePath small = integrate_MJ_limit(lattice, noise.jumps, kernel, small_mask,
                                                       /*compensated=*/true, truncation, u_rule);
            ValuePath big(lattice.cells() + 1, 0.0);
            if (truncation != kNoTruncation)
                big = integrate_MJ_limit(lattice, noise.jumps, kernel, big_h,
                                         /*compensated=*/false, truncation, u_rule);
            for (int i = 0; i <= lattice.cells(); ++i) total[i] += small[i] + big[i];
        }

        out[k].reserve(eval_times.size());
        for (double t : eval_times) out[k].push_back(path_value_at(total, lattice, t));
    }
    return out;
}

namespace {

double metric_value(const std::string& metric, std::span<const double> a,
                    std::span<const double> b) {
    if (metric == "ks") return stats::ks_statistic(std::vector<double>(a.begin(), a.end()),
                                                   std::vector<double>(b.begin(), b.end()));
    if (metric == "cvm") return stats::cvm_statistic(std::vector<double>(a.begin(), a.end()),
                                                     std::vector<double>(b.begin(), b.end()));
    if (metric.rfind("moment-", 0) == 0) {
        const int k = std::stoi(metric.substr(7));
        return stats::moment_distance(a, b, k);
    }
    throw std::invalid_argument("unknown metric '" + metric + "'");
}

}  // namespace

DistanceReport distributional_distance(std::span<const double> a, std::span<const double> b,
                                       const std::string& metric, int bootstrap_resamples) {
    if (a.size() < 1000 || b.size() < 1000)
        throw std::invalid_argument("distributional_distance: need at least 1000 samples per side");
    DistanceReport rep;
    rep.metric = metric;
    rep.n_a = a.size();
    rep.n_b = b.size();
    rep.value = metric_value(metric, a, b);
    const auto ci = stats::bootstrap_ci2(
        a, b,
        [&](std::span<const double> ra, std::span<const double> rb) {
            return metric_value(metric, ra, rb);
        },
        bootstrap_resamples);
    rep.ci_lo = ci.lo;
    rep.ci_hi = ci.hi;
    return rep;
}

DistanceReport distributional_distance(std::span<const double> a,
                                       const std::function<double(double)>& cdf,
                                       const std::string& metric, int bootstrap_resamples) {
    if (a.size() < 1000)
        throw std::invalid_argument("distributional_distance: need at least 1000 samples");
    if (metric != "ks")
        throw std::invalid_argument("closed-form comparison supports the ks metric");
    DistanceReport rep;
    rep.metric = metric;
    rep.n_a = a.size();
    rep.n_b = 0;
    rep.value = stats::ks_statistic(std::vector<double>(a.begin(), a.end()), cdf);
    const auto ci = stats::bootstrap_ci(
        a,
        [&](std::span<const double> ra) {
            return stats::ks_statistic(std::vector<double>(ra.begin(), ra.end()), cdf);
        },
        bootstrap_resamples);
    rep.ci_lo = ci.lo;
    rep.ci_hi = ci.hi;
    return rep;
}

MeshConvergenceResult mesh_convergence_study(const ModelSpec& model,
                                             std::span<const int> mesh_cells, int n_paths,
                                             double eval_time, double lattice_step,
                                             std::uint64_t seed,
                                             std::map<std::string, std::vector<double>>*
                                                 sample_dumps) {
    const auto cc = compose_policy(model);
    const double horizon = eval_time;
    const bool gaussian_oracle = model.catalog_id == "linear-gaussian";

    std::function<double(double)> oracle_cdf;
    std::vector<double> limit_samples;
    if (gaussian_oracle) {
        // limit marginal from the moment ODE oracle (10x finer than the solver)
        MomentCurve oracle(model, horizon, static_cast<int>(10.0 * horizon / lattice_step));
        const double mu = oracle.mean_at(horizon);
        const double sd = std::sqrt(oracle.var_at(horizon));
        oracle_cdf = [mu, sd](double x) { return normal_cdf((x - mu) / sd); };
    } else {
        const auto u_rule = default_cube_rule(model.policy.d);
        auto samples = mc::run_paths(n_paths, [&](std::size_t i) {
            const auto noise =
                make_limit_noise(model, horizon, lattice_step, seed ^ 0x11337700ULL, i);
            return euler_limit(cc, noise, u_rule).terminal()[0];
        });
        limit_samples = std::move(samples);
        if (sample_dumps) (*sample_dumps)["limit-marginal"] = limit_samples;
    }

    MeshConvergenceResult result;
    for (int cells : mesh_cells) {
        const Partition partition = Partition::uniform(horizon, cells);
        auto samples = mc::run_paths(n_paths, [&](std::size_t i) {
            const auto noise = make_grid_noise(model, partition, lattice_step, seed, i);
            return euler_grid_sampling(cc, noise).terminal()[0];
        });
        if (sample_dumps)
            (*sample_dumps)["grid-marginal-n" + std::to_string(cells)] = samples;
        DistanceReport rep = gaussian_oracle
                                 ? distributional_distance(samples, oracle_cdf, "ks")
                                 : distributional_distance(samples, limit_samples, "ks");
        result.rows.push_back(
            {cells, partition.mesh(), rep.value, rep.ci_lo, rep.ci_hi});
    }

    std::vector<double> log_cells, log_dist;
    for (const auto& row : result.rows) {
        log_cells.push_back(std::log(static_cast<double>(row.cells)));
        log_dist.push_back(std::log(std::max(row.distance, 1e-300)));
    }
    result.slope_vs_cells = stats::fit_line(log_cells, log_dist).slope;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        const auto& prev = result.rows[i - 1];
        const auto& cur = result.rows[i];
        if (cur.distance > prev.distance && cur.ci_lo > prev.ci_hi)
            result.monotone_within_ci = false;
    }
    return result;
}

C2Function c2_bump(const Vec& center, double radius, const std::string& id) {
    const double r2 = radius * radius;
    C2Function f;
    f.id = id;
    f.value = [center, r2](const Vec& x) {
        const double w = 1.0 - (x - center).squaredNorm() / r2;
        return w > 0.0 ? w * w * w : 0.0;
    };
    f.grad = [center, r2](const Vec& x) {
        const Vec dx = x - center;
        const double w = 1.0 - dx.squaredNorm() / r2;
        if (w <= 0.0) return Vec(Vec::Zero(x.size()));
        return Vec(-6.0 * w * w / r2 * dx);
    };
    f.hess = [center, r2](const Vec& x) {
        const int m = static_cast<int>(x.size());
        const Vec dx = x - center;
        const double w = 1.0 - dx.squaredNorm() / r2;
        if (w <= 0.0) return Mat(Mat::Zero(m, m));
        Mat h = -6.0 * w * w / r2 * Mat(Mat::Identity(m, m));
        h += 24.0 * w / (r2 * r2) * Mat(dx * dx.transpose());
        return h;
    };
    return f;
}

std::vector<C2Function> c2_catalog(int m) {
    return {c2_bump(Vec::Zero(m), 3.0, "bump-wide"),
            c2_bump(Vec::Constant(m, 0.5), 2.0, "bump-shifted")};
}

double generator_apply(const ComposedCoefficients& cc, const C2Function& f, double s,
                       const Vec& x, const UnitCubeRule& u_rule) {
    const double fx = f.value(x);
    const Vec gx = f.grad(x);
    const Mat hx = f.hess(x);
    const LevyKernel& kernel = cc.model().kernel;
    const bool jumps = !kernel.is_zero();
    std::vector<MarkNode> nodes;
    if (jumps) nodes = kernel.compensator_nodes(s);

    double acc = 0.0;
    for (std::size_t i = 0; i < u_rule.nodes.size(); ++i) {
        const Vec& u = u_rule.nodes[i];
        double val = cc.drift(s, x, u).dot(gx);
        val += 0.5 * (cc.diffusion_outer(s, x, u) * hx).trace();
        if (jumps) {
            for (const auto& node : nodes) {
                const Vec g = cc.jump(s, x, u, node.z);
                val += node.w * (f.value(x + g) - fx - g.dot(gx));
            }
        }
        acc += u_rule.weights[i] * val;
    }
    return acc;
}

MartingaleResidual martingale_residual(const ModelSpec& model, const C2Function& f, double t,
                                       int n_paths, double lattice_step, std::uint64_t seed) {
    const auto cc = compose_policy(model);
    const auto u_rule = default_cube_rule(model.policy.d);
    const Vec x0 = model.x0;
    const double f0 = f.value(x0);

    struct PathOut {
        double value = 0.0;
        bool ok = false;
    };
    auto outs = mc::run_paths(n_paths, [&](std::size_t i) -> PathOut {
        try {
            const auto noise = make_limit_noise(model, t, lattice_step, seed, i);
            const auto path = euler_limit(cc, noise, u_rule);
            double integral = 0.0;
            for (int k = 0; k < noise.lattice.cells(); ++k)
                integral += generator_apply(cc, f, noise.lattice.time(k), path.state(k), u_rule) *
                            noise.lattice.dt(k);
            return {f.value(path.terminal()) - f0 - integral, true};
        } catch (const BlowUpError&) {
            return {0.0, false};
        }
    });

    MartingaleResidual res;
    stats::Accumulator acc;
    for (const auto& out : outs) {
        if (out.ok)
            acc.add(out.value);
        else
            ++res.blown_up;
    }
    res.mean = acc.mean();
    res.se = acc.se_mean();
    res.n_paths = static_cast<int>(acc.count());
    return res;
}

AveragingRow averaging_collapse(int cells, double horizon, double sigma, int n_paths,
                                std::uint64_t seed) {
    ModelSpec model = make_model("sec2-puredrift", {{"sigma", sigma}});
    const auto cc = compose_policy(model);
    const Partition partition = Partition::uniform(horizon, cells);

    auto devs = mc::run_paths(n_paths, [&](std::size_t i) {
        // lattice = partition: the scheme is exact for this model
        const auto noise = make_grid_noise(model, partition, horizon, seed, i);
        const auto path = euler_grid_sampling(cc, noise);
        double b_total = 0.0;
        for (int k = 0; k < noise.lattice.cells(); ++k) b_total += noise.brownian.increment(k)[0];
        return path.terminal()[0] - model.x0[0] - sigma * b_total;
    });

    stats::Accumulator acc;
    for (double d : devs) acc.add(d);
    AveragingRow row;
    row.cells = cells;
    row.variance = acc.variance();
    row.se = acc.se_variance();
    row.expected = horizon * horizon / cells;
    return row;
}

double empirical_sampling_measure(const GridSamplingRealization& xi, const TimeBox& box) {
    if (!(box.t_lo <= box.t_hi) || box.u_lo.size() != xi.d || box.u_hi.size() != xi.d)
        throw std::invalid_argument("empirical_sampling_measure: malformed rectangle");
    for (int j = 0; j < xi.d; ++j)
        if (!(box.u_lo[j] <= box.u_hi[j]) || box.u_lo[j] < 0.0 || box.u_hi[j] > 1.0)
            throw std::invalid_argument("empirical_sampling_measure: malformed u-box");
    const auto& pts = xi.partition.points();
    double acc = 0.0;
    for (int i = 0; i < xi.partition.cells(); ++i) {
        const double overlap =
            std::min(box.t_hi, pts[i + 1]) - std::max(box.t_lo, pts[i]);
        if (overlap <= 0.0) continue;
        bool inside = true;
        const Vec& s = xi.cell_sample(i);
        for (int j = 0; j < xi.d; ++j)
            if (s[j] < box.u_lo[j] || s[j] > box.u_hi[j]) {
                inside = false;
                break;
            }
        if (inside) acc += overlap;
    }
    return acc;
}

double empirical_measure_discrepancy(const GridSamplingRealization& xi,
                                     std::span<const TimeBox> family) {
    double sup = 0.0;
    for (const auto& box : family) {
        double vol = box.t_hi - box.t_lo;
        for (int j = 0; j < xi.d; ++j) vol *= box.u_hi[j] - box.u_lo[j];
        sup = std::max(sup, std::abs(empirical_sampling_measure(xi, box) - vol));
    }
    return sup;
}

std::vector<TimeBox> default_rectangle_family(double horizon, int d) {
    auto box = [d](double lo, double hi) {
        return std::pair(Vec::Constant(d, lo), Vec::Constant(d, hi));
    };
    std::vector<TimeBox> family;
    for (const auto& [t_lo, t_hi] : std::vector<std::pair<double, double>>{
             {0.0, horizon}, {0.0, 0.5 * horizon}, {0.25 * horizon, 0.75 * horizon}}) {
        for (const auto& [lo, hi] :
             std::vector<std::pair<double, double>>{{0.0, 0.5}, {0.25, 0.75}, {0.0, 0.25}}) {
            auto [u_lo, u_hi] = box(lo, hi);
            family.push_back({t_lo, t_hi, u_lo, u_hi});
        }
    }
    return family;
}

std::vector<DiscrepancyRow> lln_discrepancy_study(std::span<const int> mesh_cells,
                                                  double horizon, int d, int n_realizations,
                                                  std::uint64_t seed) {
    const auto family = default_rectangle_family(horizon, d);
    std::vector<DiscrepancyRow> rows;
    for (int cells : mesh_cells) {
        const Partition partition = Partition::uniform(horizon, cells);
        auto discs = mc::run_paths(n_realizations, [&](std::size_t i) {
            auto stream = derive_stream(seed, i, StreamRole::gridsample);
            const auto xi = sample_grid(partition, d, stream);
            return empirical_measure_discrepancy(xi, family);
        });
        stats::Accumulator acc;
        for (double v : discs) acc.add(v);
        rows.push_back({cells, acc.mean(), acc.se_mean()});
    }
    return rows;
}

}  // namespace gridsde
