#pragma once

namespace gridsde {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile. Rational (Acklam) approximation polished by one
// Halley step against normal_cdf; absolute error well below 1e-9 on (0,1).
double normal_quantile(double p);

// Standard normal density.
double normal_pdf(double x);

}  // namespace gridsde
