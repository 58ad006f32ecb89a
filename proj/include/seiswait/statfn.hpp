#pragma once

#include <functional>
#include <span>

namespace seiswait {

// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
// Power series for x < s + 1, Lentz continued fraction for Q otherwise.
[[nodiscard]] double regularized_lower_gamma(double s, double x);
[[nodiscard]] double regularized_upper_gamma(double s, double x);

// P(X >= x) for X ~ chi-square with `df` degrees of freedom.
[[nodiscard]] double chi2_sf(double x, int df);

[[nodiscard]] double normal_cdf(double x);

// Inverse standard normal CDF: rational approximation refined by one Halley
// step against normal_cdf.
[[nodiscard]] double normal_quantile(double p);

// Limiting Kolmogorov survival function
//   Q(z) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 z^2),
// summed to 100 terms (theta-function dual form below z = 1).
[[nodiscard]] double kolmogorov_sf(double z);

struct KsResult {
  double statistic;
  double p_value;
};

// One-sample Kolmogorov-Smirnov test against a continuous CDF. The p-value
// uses the asymptotic distribution of sqrt(n) * D.
[[nodiscard]] KsResult ks_test(std::span<const double> samples,
                               const std::function<double(double)>& cdf);

}  // namespace seiswait
