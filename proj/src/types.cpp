#include "gridsde/types.hpp"

#include <cmath>

namespace gridsde {

Mat psd_cholesky(const Mat& a, double zero_band) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw DimensionError("psd_cholesky: matrix not square");
    const double scale = std::max(1.0, a.trace());
    const double ztol = zero_band * scale;
    const double itol = 1e-10 * scale;

    Mat sym = 0.5 * (a + Mat(a.transpose()));
    Mat c = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double d = sym(j, j);
        for (int k = 0; k < j; ++k) d -= c(j, k) * c(j, k);
        if (d > ztol) {
            c(j, j) = std::sqrt(d);
            for (int i = j + 1; i < n; ++i) {
                double s = sym(i, j);
                for (int k = 0; k < j; ++k) s -= c(i, k) * c(j, k);
                c(i, j) = s / c(j, j);
            }
        } else if (d >= -itol) {
            // semidefinite column: pivot in the jitter band collapses to zero,
            // valid only if the remaining column is zero as well
            c(j, j) = 0.0;
            for (int i = j + 1; i < n; ++i) {
                double s = sym(i, j);
                for (int k = 0; k < j; ++k) s -= c(i, k) * c(j, k);
                if (std::abs(s) > 1e-6 * scale)
                    throw NumericError("psd_cholesky: matrix not PSD (dangling column " +
                                       std::to_string(j) + ")");
            }
        } else {
            throw NumericError("psd_cholesky: matrix indefinite (pivot " + std::to_string(d) +
                               " at index " + std::to_string(j) + ")");
        }
    }
    return c;
}

}  // namespace gridsde
