#include "gridsde/model.hpp"

namespace gridsde {

ComposedCoefficients::ComposedCoefficients(std::shared_ptr<const ModelSpec> model)
    : model_(std::move(model)) {}

Vec ComposedCoefficients::drift(double s, const Vec& x, const Vec& u) const {
    return model_->drift(s, x, model_->policy.map(s, x, u));
}

Mat ComposedCoefficients::diffusion(double s, const Vec& x, const Vec& u) const {
    return model_->diffusion(s, x, model_->policy.map(s, x, u));
}

Vec ComposedCoefficients::jump(double s, const Vec& x, const Vec& u, const Vec& z) const {
    return model_->jump(s, x, model_->policy.map(s, x, u), z);
}

Mat ComposedCoefficients::diffusion_outer(double s, const Vec& x, const Vec& u) const {
    const Mat a = diffusion(s, x, u);
    return a * a.transpose();
}

ComposedCoefficients compose_policy(std::shared_ptr<const ModelSpec> model) {
    const ModelSpec& ms = *model;
    if (ms.m < 1 || ms.m > kMaxDim || ms.p < 1 || ms.p > kMaxDim || ms.q < 1 ||
        ms.q > kMaxDim || ms.policy.d < 1 || ms.policy.d > kMaxDim)
        throw DimensionError("compose_policy: dimensions must lie in [1, " +
                             std::to_string(kMaxDim) + "]");
    check_dim(ms.x0, ms.m, "initial state");

    // probe the whole evaluation chain once at a fixed point
    const double s = 0.0;
    const Vec x = ms.x0;
    const Vec u = Vec::Constant(ms.policy.d, 0.5);
    const Vec action = ms.policy.map(s, x, u);
    check_dim(action, ms.policy.action_dim, "policy output");
    check_dim(ms.drift(s, x, action), ms.m, "drift output");
    const Mat a = ms.diffusion(s, x, action);
    if (a.rows() != ms.m || a.cols() != ms.p)
        throw DimensionError("diffusion output: expected " + std::to_string(ms.m) + "x" +
                             std::to_string(ms.p));
    if (!ms.kernel.is_zero()) {
        const Vec z = Vec::Constant(ms.q, 1.0);
        check_dim(ms.jump(s, x, action, z), ms.m, "jump output");
        if (ms.kernel.q != ms.q) throw DimensionError("kernel mark dimension differs from model q");
    }
    return ComposedCoefficients(std::move(model));
}

ComposedCoefficients compose_policy(const ModelSpec& model) {
    return compose_policy(std::make_shared<const ModelSpec>(model));
}

}  // namespace gridsde
