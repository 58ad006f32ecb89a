#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seiswait/rng.hpp"

namespace seiswait {

// Waiting time S until the next major event, given `elapsed` time t since the
// previous one, when the major event is the k-th jump (`shock_index`) of a
// process with asymptotic slope m. Its CDF is
//   G_t(h) = 1 - (1 + h/t)^(k-1) exp(-m h),
// a distribution function exactly when m t >= k - 1.
struct WaitingLaw {
  double elapsed;
  int shock_index;
  double slope;

  // Throws InvalidLawError when the parameters do not define a CDF.
  void validate() const;
};

// G(h) = 1 - exp(-m h).
[[nodiscard]] double limit_cdf(double slope, double h);

[[nodiscard]] double conditional_cdf(const WaitingLaw& law, double h);

// Solves G_t(h) = u by bisection.
[[nodiscard]] double conditional_quantile(const WaitingLaw& law, double u);

[[nodiscard]] std::vector<double> sample_conditional(const WaitingLaw& law, std::size_t n,
                                                     Rng& rng);
[[nodiscard]] std::vector<double> sample_conditional(const WaitingLaw& law, std::size_t n,
                                                     std::uint64_t seed);

// Equiprobable cut points of the limit law: h_i = -ln(1 - i/r)/m, i = 1..r-1.
[[nodiscard]] std::vector<double> breakpoints(double slope, int bins);

// sup_h |exp(-a h) - exp(-b h)| over h >= 0. Attained at
// h* = ln(a/b)/(a - b) for a != b.
[[nodiscard]] double sup_distance_exp(double a, double b);

}  // namespace seiswait
