#include "gridsde/catalog.hpp"

#include "gridsde/normal.hpp"

#include <cmath>
#include <sstream>

namespace gridsde {

namespace {

const std::map<std::string, std::map<std::string, double>> kDefaults = {
    {"cpoisson-jump",
     {{"theta", 1.0},
      {"sigma", 0.3},
      {"mu0", 0.2},
      {"mu1", 0.5},
      {"sigma_p", 0.3},
      {"g0", 0.2},
      {"g1", 0.1},
      {"lambda", 5.0},
      {"x0", 0.5}}},
    {"linear-gaussian",
     {{"theta", 1.0},
      {"sigma", 0.5},
      {"mu0", 0.3},
      {"mu1", 0.5},
      {"sigma_p", 0.4},
      {"x0", 1.0}}},
    {"sec2-puredrift", {{"sigma", 1.0}, {"x0", 0.0}}},
};

std::map<std::string, double> merged_params(const std::string& id,
                                            const std::map<std::string, double>& overrides) {
    auto it = kDefaults.find(id);
    if (it == kDefaults.end()) {
        std::ostringstream msg;
        msg << "unknown catalog model '" << id << "'; valid ids:";
        for (const auto& [known, unused] : kDefaults) msg << " " << known;
        throw std::invalid_argument(msg.str());
    }
    auto params = it->second;
    for (const auto& [key, value] : overrides) {
        if (!params.count(key))
            throw std::invalid_argument("model '" + id + "' has no parameter '" + key + "'");
        params[key] = value;
    }
    return params;
}

PolicySpec gaussian_policy(double mu0, double mu1, double sigma_p) {
    PolicySpec policy;
    policy.d = 1;
    policy.action_dim = 1;
    policy.map = [mu0, mu1, sigma_p](double, const Vec& x, const Vec& u) {
        Vec a(1);
        a[0] = mu0 + mu1 * x[0] + sigma_p * normal_quantile(u[0]);
        return a;
    };
    return policy;
}

}  // namespace

std::vector<CatalogInfo> catalog_list() {
    return {
        {"cpoisson-jump", 1, 1, 1, 1, true,
         "mean-reverting jump diffusion with compound Poisson marks +/-1 and multiplicative "
         "jump coefficient z*(g0+g1*x)"},
        {"linear-gaussian", 1, 1, 1, 1, true,
         "mean-reverting diffusion with Gaussian randomized policy; limit dynamics are "
         "Ornstein-Uhlenbeck"},
        {"sec2-puredrift", 1, 1, 1, 1, true,
         "pure drift b = action with standard Gaussian policy and additive noise; the limit "
         "drift averages to zero"},
    };
}

ModelSpec make_model(const std::string& id, const std::map<std::string, double>& overrides) {
    const auto pr = merged_params(id, overrides);
    ModelSpec model;
    model.catalog_id = id;
    model.params = pr;
    model.m = model.p = model.q = 1;
    model.x0 = Vec::Constant(1, pr.at("x0"));

    if (id == "sec2-puredrift") {
        const double sigma = pr.at("sigma");
        model.drift = [](double, const Vec&, const Vec& act) { return act; };
        model.diffusion = [sigma](double, const Vec&, const Vec&) {
            return Mat(Mat::Constant(1, 1, sigma));
        };
        model.jump = [](double, const Vec&, const Vec&, const Vec&) { return Vec(Vec::Zero(1)); };
        model.policy.d = 1;
        model.policy.action_dim = 1;
        model.policy.map = [](double, const Vec&, const Vec& u) {
            Vec a(1);
            a[0] = normal_quantile(u[0]);
            return a;
        };
        model.kernel = zero_kernel(1);
        return model;
    }

    const double theta = pr.at("theta");
    const double sigma = pr.at("sigma");
    model.drift = [theta](double, const Vec& x, const Vec& act) {
        return Vec(theta * (act - x));
    };
    model.diffusion = [sigma](double, const Vec&, const Vec&) {
        return Mat(Mat::Constant(1, 1, sigma));
    };
    model.policy = gaussian_policy(pr.at("mu0"), pr.at("mu1"), pr.at("sigma_p"));

    if (id == "linear-gaussian") {
        model.jump = [](double, const Vec&, const Vec&, const Vec&) { return Vec(Vec::Zero(1)); };
        model.kernel = zero_kernel(1);
    } else {  // cpoisson-jump
        const double g0 = pr.at("g0"), g1 = pr.at("g1");
        model.jump = [g0, g1](double, const Vec& x, const Vec&, const Vec& z) {
            return Vec(z * (g0 + g1 * x[0]));
        };
        model.kernel = compound_poisson_kernel(
            pr.at("lambda"),
            {{Vec::Constant(1, 1.0), 0.5}, {Vec::Constant(1, -1.0), 0.5}});
    }
    return model;
}

CatalogParams catalog_params(const ModelSpec& model) {
    if (model.catalog_id.empty())
        throw std::invalid_argument("catalog_params: model is not from the catalog");
    CatalogParams out;
    auto get = [&](const char* key, double fallback) {
        auto it = model.params.find(key);
        return it == model.params.end() ? fallback : it->second;
    };
    out.theta = get("theta", 0.0);
    out.sigma = get("sigma", 0.0);
    out.mu0 = get("mu0", 0.0);
    out.mu1 = get("mu1", 0.0);
    out.sigma_p = get("sigma_p", 0.0);
    out.g0 = get("g0", 0.0);
    out.g1 = get("g1", 0.0);
    out.lambda = get("lambda", 0.0);
    out.mark_msq = out.lambda > 0.0 ? 1.0 : 0.0;  // catalog marks are +/-1
    out.x0 = get("x0", 0.0);
    if (model.catalog_id == "sec2-puredrift") {
        // b = action = Phi^-1(u): u-averaged drift vanishes
        out.theta = 0.0;
    }
    return out;
}

namespace {

// d/dt (mean, second moment) of the limit dynamics for catalog models
void moment_rhs(const CatalogParams& pr, double mean, double second, double& dmean,
                double& dsecond) {
    const double drift_lin = pr.theta * (pr.mu1 - 1.0);
    const double drift_const = pr.theta * pr.mu0;
    const double jump_msq = pr.lambda * pr.mark_msq;  // int |z|^2 nu(dz)
    dmean = drift_const + drift_lin * mean;
    dsecond = 2.0 * drift_const * mean + 2.0 * drift_lin * second + pr.sigma * pr.sigma +
              jump_msq * (pr.g0 * pr.g0 + 2.0 * pr.g0 * pr.g1 * mean + pr.g1 * pr.g1 * second);
}

}  // namespace

MomentCurve::MomentCurve(const ModelSpec& model, double horizon, int steps) : horizon_(horizon) {
    const CatalogParams pr = catalog_params(model);
    mean_.resize(steps + 1);
    second_.resize(steps + 1);
    double m = pr.x0, s2 = pr.x0 * pr.x0;
    mean_[0] = m;
    second_[0] = s2;
    const double h = horizon / steps;
    for (int k = 0; k < steps; ++k) {
        double k1m, k1s, k2m, k2s, k3m, k3s, k4m, k4s;
        moment_rhs(pr, m, s2, k1m, k1s);
        moment_rhs(pr, m + 0.5 * h * k1m, s2 + 0.5 * h * k1s, k2m, k2s);
        moment_rhs(pr, m + 0.5 * h * k2m, s2 + 0.5 * h * k2s, k3m, k3s);
        moment_rhs(pr, m + h * k3m, s2 + h * k3s, k4m, k4s);
        m += h / 6.0 * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
        s2 += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
        mean_[k + 1] = m;
        second_[k + 1] = s2;
    }
}

double MomentCurve::mean_at(double t) const {
    const double pos = t / horizon_ * (mean_.size() - 1);
    const int k = std::min(static_cast<int>(pos), static_cast<int>(mean_.size()) - 2);
    const double frac = pos - k;
    return mean_[k] * (1.0 - frac) + mean_[k + 1] * frac;
}

double MomentCurve::second_at(double t) const {
    const double pos = t / horizon_ * (second_.size() - 1);
    const int k = std::min(static_cast<int>(pos), static_cast<int>(second_.size()) - 2);
    const double frac = pos - k;
    return second_[k] * (1.0 - frac) + second_[k + 1] * frac;
}

double lg_mean_closed(const CatalogParams& pr, double t) {
    const double a = pr.theta * (1.0 - pr.mu1);
    return std::exp(-a * t) * pr.x0 + pr.theta * pr.mu0 / a * (1.0 - std::exp(-a * t));
}

double lg_var_closed(const CatalogParams& pr, double t) {
    const double a = pr.theta * (1.0 - pr.mu1);
    return pr.sigma * pr.sigma * (1.0 - std::exp(-2.0 * a * t)) / (2.0 * a);
}

PicardModelConstants catalog_picard_constants(const ModelSpec& model, double horizon) {
    const CatalogParams pr = catalog_params(model);
    PicardModelConstants out;
    const int ell = model.p + 1;
    const double jump_msq = pr.lambda * pr.mark_msq;
    // beta(s,y) = theta*(mu0 + (mu1-1) y)
    out.k_beta = std::abs(pr.theta * (pr.mu1 - 1.0));
    // diffusion is state-independent for all catalog models; the jump column
    // contributes g1^2 * int |z|^2 nu(dz) per unit |dy|^2, times the 4*ell factor
    out.k_alpha = std::sqrt(4.0 * ell * pr.g1 * pr.g1 * jump_msq);
    // growth constant at y = 0
    const double beta0_sq = pr.theta * pr.mu0 * pr.theta * pr.mu0;
    double alpha0_sq = pr.sigma * pr.sigma;  // white columns
    if (model.catalog_id == "sec2-puredrift") alpha0_sq = pr.sigma * pr.sigma;
    alpha0_sq += pr.g0 * pr.g0 * jump_msq;  // jump column at y = 0
    double beta0_int = horizon * beta0_sq;  // int_0^T |beta(s,0)|^2 ds
    if (model.catalog_id == "sec2-puredrift") beta0_int = 0.0;  // beta == 0
    out.k0 = std::sqrt(horizon * beta0_int + 4.0 * ell * horizon * alpha0_sq);
    return out;
}

}  // namespace gridsde
