#include "seiswait/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seiswait/errors.hpp"

namespace seiswait {

void WaitingLaw::validate() const {
  if (!(slope > 0.0) || !std::isfinite(slope)) {
    throw InvalidLawError("slope m must be finite and strictly positive");
  }
  if (shock_index < 1) {
    throw InvalidLawError("shock index k must be >= 1");
  }
  if (!(elapsed > 0.0) || !std::isfinite(elapsed)) {
    throw InvalidLawError("elapsed time t must be finite and strictly positive");
  }
  if (slope * elapsed < static_cast<double>(shock_index - 1)) {
    throw InvalidLawError("m*t = " + std::to_string(slope * elapsed) + " is below k-1 = " +
                          std::to_string(shock_index - 1) +
                          "; the conditional waiting law is not a CDF");
  }
}

double limit_cdf(double slope, double h) {
  if (!(slope > 0.0)) {
    throw std::domain_error("limit CDF needs m > 0");
  }
  if (!(h >= 0.0)) {
    throw std::domain_error("limit CDF needs h >= 0");
  }
  return -std::expm1(-slope * h);
}

double conditional_cdf(const WaitingLaw& law, double h) {
  law.validate();
  if (!(h >= 0.0)) {
    throw std::domain_error("conditional CDF needs h >= 0");
  }
  if (std::isinf(h)) {
    return 1.0;
  }
  const double log_survival =
      (law.shock_index - 1) * std::log1p(h / law.elapsed) - law.slope * h;
  return -std::expm1(log_survival);
}

double conditional_quantile(const WaitingLaw& law, double u) {
  law.validate();
  if (!(u >= 0.0) || !(u < 1.0)) {
    throw std::domain_error("quantile level must lie in [0, 1)");
  }
  if (u == 0.0) {
    return 0.0;
  }
  double lo = 0.0;
  double hi = 1.0 / law.slope;
  while (conditional_cdf(law, hi) <= u) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw std::runtime_error("quantile bracket overflow");
    }
  }
  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double g = conditional_cdf(law, mid);
    if (std::abs(g - u) <= 1e-12 || mid == lo || mid == hi) {
      break;
    }
    if (g < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

std::vector<double> sample_conditional(const WaitingLaw& law, std::size_t n, Rng& rng) {
  law.validate();
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(conditional_quantile(law, rng.uniform()));
  }
  return out;
}

std::vector<double> sample_conditional(const WaitingLaw& law, std::size_t n,
                                       std::uint64_t seed) {
  Rng rng(seed);
  return sample_conditional(law, n, rng);
}

std::vector<double> breakpoints(double slope, int bins) {
  if (!(slope > 0.0)) {
    throw std::domain_error("breakpoints need m > 0");
  }
  if (bins < 2) {
    throw std::domain_error("breakpoints need at least two bins");
  }
  std::vector<double> cuts;
  cuts.reserve(static_cast<std::size_t>(bins - 1));
  for (int i = 1; i < bins; ++i) {
    cuts.push_back(-std::log1p(-static_cast<double>(i) / bins) / slope);
  }
  return cuts;
}

double sup_distance_exp(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::domain_error("rates must be finite and nonnegative");
  }
  if (a == b) {
    return 0.0;
  }
  // A zero rate is the constant survival function 1; the gap tends to 1.
  if (a == 0.0 || b == 0.0) {
    return 1.0;
  }
  const double diff = a - b;
  const double scale = std::max(a, b);
  if (std::abs(diff) < 1e-12 * scale) {
    // First-order term of the expansion: |a - b| sup_h h exp(-a h).
    return std::abs(diff) * std::exp(-1.0) / scale;
  }
  const double h_star = std::log1p(diff / b) / diff;
  return std::exp(-b * h_star) * std::abs(std::expm1(-diff * h_star));
}

}  // namespace seiswait
