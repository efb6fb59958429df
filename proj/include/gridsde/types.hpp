#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gridsde {

// Hard cap on any of the model dimensions (state m, Brownian p, mark q,
// randomization d). Keeps vectors/matrices on inline storage so the hot
// simulation loops never touch the heap.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by the solvers when a path leaves the |X| <= 1e12 guard region.
struct BlowUpError : std::runtime_error {
    double time;
    explicit BlowUpError(double t)
        : std::runtime_error("path exceeded blow-up guard at t=" + std::to_string(t)), time(t) {}
};

inline void check_dim(const Vec& v, int n, const char* what) {
    if (v.size() != n)
        throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(n) +
                             ", got " + std::to_string(static_cast<int>(v.size())));
}

// Cholesky-type factor C with C C^T = A for a symmetric PSD matrix.
// Semidefinite pivots within the jitter band are treated as zero columns,
// so rank-deficient (including all-zero) matrices factor exactly.
// Throws NumericError if A is indefinite beyond -1e-10 * max(1, trace).
Mat psd_cholesky(const Mat& a, double zero_band = 1e-12);

}  // namespace gridsde
