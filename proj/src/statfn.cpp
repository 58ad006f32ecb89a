#include "seiswait/statfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace seiswait {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

double lower_gamma_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      break;
    }
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double upper_gamma_fraction(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      break;
    }
  }
  return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

void check_gamma_args(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("incomplete gamma needs s > 0");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("incomplete gamma needs x >= 0");
  }
}

}  // namespace

double regularized_lower_gamma(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) {
    return 0.0;
  }
  if (std::isinf(x)) {
    return 1.0;
  }
  if (x < s + 1.0) {
    return std::clamp(lower_gamma_series(s, x), 0.0, 1.0);
  }
  return std::clamp(1.0 - upper_gamma_fraction(s, x), 0.0, 1.0);
}

double regularized_upper_gamma(double s, double x) {
  check_gamma_args(s, x);
  if (x == 0.0) {
    return 1.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  if (x < s + 1.0) {
    return std::clamp(1.0 - lower_gamma_series(s, x), 0.0, 1.0);
  }
  return std::clamp(upper_gamma_fraction(s, x), 0.0, 1.0);
}

double chi2_sf(double x, int df) {
  if (df < 1) {
    throw std::domain_error("chi-square needs df >= 1");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("chi-square statistic must be nonnegative");
  }
  return regularized_upper_gamma(0.5 * df, 0.5 * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("normal quantile needs 0 < p < 1");
  }
  // Acklam's rational approximation, relative error about 1e-9.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement. Work with the nearer tail to avoid cancellation.
  const double e =
      p < 0.5 ? normal_cdf(x) - p : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double kolmogorov_sf(double z) {
  if (!(z > 0.0)) {
    return 1.0;
  }
  constexpr int terms = 100;
  if (z < 1.0) {
    // CDF = sqrt(2 pi)/z * sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 z^2)).
    const double k = std::numbers::pi * std::numbers::pi / (8.0 * z * z);
    double sum = 0.0;
    for (int j = 1; j <= terms; ++j) {
      const double odd = 2.0 * j - 1.0;
      sum += std::exp(-odd * odd * k);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / z * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= terms; ++j) {
    const double term = std::exp(-2.0 * j * j * z * z);
    sum += (j % 2 == 1) ? term : -term;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::domain_error("KS test needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  d = std::clamp(d, 0.0, 1.0);
  return {d, kolmogorov_sf(std::sqrt(n) * d)};
}

}  // namespace seiswait
