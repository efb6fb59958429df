#pragma once

#include "gridsde/model.hpp"

#include <map>
#include <string>
#include <vector>

namespace gridsde {

struct CatalogInfo {
    std::string id;
    int m = 1, p = 1, q = 1, d = 1;
    bool closed_form_moments = false;
    std::string description;
};

// Shipped models, sorted lexicographically by id:
//   "cpoisson-jump"   mean-reverting drift, constant diffusion, compound
//                     Poisson jumps gamma = z * (g0 + g1 x), Gaussian policy
//   "linear-gaussian" mean-reverting drift theta*(action - x), constant
//                     diffusion, Gaussian policy mu0 + mu1 x + sigma_p Phi^-1(u)
//   "sec2-puredrift"  pure drift b = action with policy Phi^-1(u),
//                     additive noise a = sigma
std::vector<CatalogInfo> catalog_list();

// Parameter overrides are by name (e.g. {"sigma", 0.25}); unknown names throw.
ModelSpec make_model(const std::string& id,
                     const std::map<std::string, double>& overrides = {});

// Named parameters of a catalog model (populated by make_model).
// All catalog models are scalar with linear structure, so the first two
// moments of the limit dynamics solve a closed linear ODE system.
struct CatalogParams {
    double theta = 0.0, sigma = 0.0, mu0 = 0.0, mu1 = 0.0, sigma_p = 0.0;
    double g0 = 0.0, g1 = 0.0, lambda = 0.0, mark_msq = 0.0;  // jump part
    double x0 = 0.0;
};
CatalogParams catalog_params(const ModelSpec& model);

// Moment curve of the limit dynamics integrated by RK4 on a fine lattice.
// Used as the independent oracle for marginal means/variances.
class MomentCurve {
  public:
    MomentCurve(const ModelSpec& model, double horizon, int steps);
    double mean_at(double t) const;
    double second_at(double t) const;
    double var_at(double t) const { return second_at(t) - mean_at(t) * mean_at(t); }

  private:
    double horizon_;
    std::vector<double> mean_, second_;
};

// Closed-form limit moments for "linear-gaussian" (OU), used to cross-check
// the RK4 curve in tests.
double lg_mean_closed(const CatalogParams& pr, double t);
double lg_var_closed(const CatalogParams& pr, double t);

// Asserted Picard constants for the embedded limit system of a catalog
// model (drift Lipschitz, martingale Lipschitz with its 4*ell factor, and
// the growth constant).
struct PicardModelConstants {
    double k_beta = 0.0;
    double k_alpha = 0.0;
    double k0 = 0.0;
};
PicardModelConstants catalog_picard_constants(const ModelSpec& model, double horizon);

}  // namespace gridsde
