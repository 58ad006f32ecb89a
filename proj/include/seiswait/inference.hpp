#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "seiswait/intensity.hpp"
#include "seiswait/nhpp.hpp"
#include "seiswait/statfn.hpp"

namespace seiswait {

struct RateInterval {
  double low;
  double high;
};

// Slope estimate over the window (tau_star, tau]; `interval` is filled when a
// significance level was requested.
struct SlopeEstimate {
  double m_hat;
  double tau_star;
  double tau;
  std::size_t count;
  std::optional<double> alpha;
  std::optional<RateInterval> interval;
};

// m_hat = (N_tau - N_tau_star) / (tau - tau_star), events counted on (tau_star, tau].
[[nodiscard]] SlopeEstimate estimate_slope(const EventTimes& events, double tau_star, double tau);
[[nodiscard]] SlopeEstimate estimate_slope(const EventTimes& events, double tau_star, double tau,
                                           double alpha);

// Plug-in waiting-time CDF 1 - exp(-m_hat h). m_hat = 0 gives the zero function.
[[nodiscard]] double random_cdf(double m_hat, double h);

// Log of the likelihood ratio of the path on [0, t] against a unit-rate
// Poisson process:
//   sum_{T_i <= tau*} log lambda(T_i) + (N_t - N_tau*) log m
//     - (Lambda(tau*) - tau*) - (t - tau*)(m - 1).
// Returns -infinity when an event falls where lambda = 0.
[[nodiscard]] double path_log_likelihood(const EventTimes& events, const IntensityModel& model,
                                         double t);

// Two-sided normal quantile x_alpha = Phi^{-1}(1 - alpha/2).
[[nodiscard]] double two_sided_quantile(double alpha);

// Roots in m of span * (m_hat - m)^2 = x^2 m, with span = tau - tau_star and
// x = two_sided_quantile(alpha).
[[nodiscard]] RateInterval slope_ci(double m_hat, double tau_star, double tau, double alpha);
[[nodiscard]] RateInterval slope_ci_for_quantile(double m_hat, double span, double x);

struct BandCurve {
  std::vector<double> grid;
  std::vector<double> lower;
  std::vector<double> upper;
};

// lower = 1 - exp(-low h), upper = 1 - exp(-high h) on an increasing grid.
[[nodiscard]] BandCurve confidence_bands(const RateInterval& interval,
                                         std::span<const double> grid);

// `points` evenly spaced values on [0, h_max].
[[nodiscard]] std::vector<double> uniform_grid(double h_max, std::size_t points);

// Header `h,lower,upper`, 12 significant digits.
void write_band_csv(std::ostream& out, const BandCurve& bands);

struct VerifierResult {
  KsResult ks;
  std::size_t reps;
  double mean;
  double variance;
  std::vector<double> statistics;
};

// sqrt(t) (m_hat - m) over `reps` constant-rate replicates, KS-tested
// against Normal(0, m).
[[nodiscard]] VerifierResult verify_clt(double m, double t, std::size_t reps, std::uint64_t seed,
                                        unsigned threads = 0);

// Median over replicates of sup_h |G_hat_tau - G| for each tau. Each replicate
// is one path observed up to the largest tau.
[[nodiscard]] std::vector<double> verify_glivenko_cantelli(double m, std::span<const double> taus,
                                                           std::size_t reps, std::uint64_t seed,
                                                           unsigned threads = 0);

// sqrt(tau) sup_h |G_hat_tau - G| KS-tested against |Normal(0, e^-2 / m)|.
[[nodiscard]] VerifierResult verify_kolmogorov_limit(double m, double tau, std::size_t reps,
                                                     std::uint64_t seed, unsigned threads = 0);

// Fraction of replicates whose (1 - alpha) interval contains m.
[[nodiscard]] double ci_coverage(double m, double t, double alpha, std::size_t reps,
                                 std::uint64_t seed, unsigned threads = 0);

inline constexpr std::size_t kMinCltReps = 100;
inline constexpr std::size_t kMinKolmogorovReps = 500;

}  // namespace seiswait
