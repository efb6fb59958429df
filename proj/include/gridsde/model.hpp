#pragma once

#include "gridsde/kernel.hpp"
#include "gridsde/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>

namespace gridsde {

// Randomized feedback policy: measurable map (s, x, u) -> action. The
// randomization dimension d (u lives in [0,1]^d) and the action dimension
// are kept independent; they coincide for all catalog models.
struct PolicySpec {
    int d = 1;
    int action_dim = 1;
    std::function<Vec(double, const Vec&, const Vec&)> map;
};

struct ModelSpec {
    int m = 1;  // state dimension
    int p = 1;  // Brownian dimension
    int q = 1;  // mark dimension
    Vec x0;

    // b(s, x, action), a(s, x, action), gamma(s, x, action, z)
    std::function<Vec(double, const Vec&, const Vec&)> drift;
    std::function<Mat(double, const Vec&, const Vec&)> diffusion;
    std::function<Vec(double, const Vec&, const Vec&, const Vec&)> jump;

    PolicySpec policy;
    LevyKernel kernel;
    std::string catalog_id;
    std::map<std::string, double> params;  // named parameters for catalog models
};

// Coefficients with the policy substituted: b_h(s,x,u) = b(s,x,h(s,x,u)) and
// analogously for the diffusion and jump coefficients. Evaluators are pure;
// concurrent use is unrestricted.
class ComposedCoefficients {
  public:
    explicit ComposedCoefficients(std::shared_ptr<const ModelSpec> model);

    Vec drift(double s, const Vec& x, const Vec& u) const;
    Mat diffusion(double s, const Vec& x, const Vec& u) const;
    Vec jump(double s, const Vec& x, const Vec& u, const Vec& z) const;
    // A_h = a_h a_h^T
    Mat diffusion_outer(double s, const Vec& x, const Vec& u) const;

    const ModelSpec& model() const { return *model_; }
    int m() const { return model_->m; }
    int p() const { return model_->p; }
    int q() const { return model_->q; }
    int d() const { return model_->policy.d; }

  private:
    std::shared_ptr<const ModelSpec> model_;
};

// Validates dimensional consistency (policy output vs. coefficient control
// argument, coefficient output shapes) by probing the evaluators, then
// returns the composed coefficients. Throws DimensionError on mismatch.
ComposedCoefficients compose_policy(const ModelSpec& model);
ComposedCoefficients compose_policy(std::shared_ptr<const ModelSpec> model);

}  // namespace gridsde
