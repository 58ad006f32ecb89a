#include "seiswait/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "parallel.hpp"
#include "seiswait/format.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/rng.hpp"

namespace seiswait {

namespace {

void check_window(double tau_star, double tau) {
  if (!(tau_star >= 0.0)) {
    throw std::domain_error("window start must be nonnegative");
  }
  if (!(tau > tau_star)) {
    throw std::domain_error("window needs tau > tau_star");
  }
}

double median(std::vector<double> values) {
  const std::size_t n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (n % 2 == 1) {
    return *mid;
  }
  const double upper = *mid;
  const double lower = *std::max_element(values.begin(), mid);
  return 0.5 * (lower + upper);
}

void fill_moments(VerifierResult& result) {
  const double n = static_cast<double>(result.statistics.size());
  double mean = 0.0;
  for (double v : result.statistics) {
    mean += v;
  }
  mean /= n;
  double ss = 0.0;
  for (double v : result.statistics) {
    ss += (v - mean) * (v - mean);
  }
  result.mean = mean;
  result.variance = n > 1 ? ss / (n - 1.0) : 0.0;
}

}  // namespace

SlopeEstimate estimate_slope(const EventTimes& events, double tau_star, double tau) {
  check_window(tau_star, tau);
  if (tau > events.horizon()) {
    throw std::domain_error("window end lies beyond the observation horizon");
  }
  const std::size_t count = events.count_between(tau_star, tau);
  return {static_cast<double>(count) / (tau - tau_star), tau_star, tau, count, std::nullopt,
          std::nullopt};
}

SlopeEstimate estimate_slope(const EventTimes& events, double tau_star, double tau,
                             double alpha) {
  SlopeEstimate est = estimate_slope(events, tau_star, tau);
  est.alpha = alpha;
  est.interval = slope_ci(est.m_hat, tau_star, tau, alpha);
  return est;
}

double random_cdf(double m_hat, double h) {
  if (!(m_hat >= 0.0) || !(h >= 0.0)) {
    throw std::domain_error("random CDF needs m_hat >= 0 and h >= 0");
  }
  return -std::expm1(-m_hat * h);
}

double path_log_likelihood(const EventTimes& events, const IntensityModel& model, double t) {
  const double tau_star = model.tail_start();
  if (!(t > tau_star)) {
    throw std::domain_error("likelihood needs t beyond the start of the constant tail");
  }
  if (t > events.horizon()) {
    throw std::domain_error("likelihood time lies beyond the observation horizon");
  }
  const double m = model.tail_rate();
  double log_lik = 0.0;
  for (double s : events.times()) {
    if (s > tau_star) {
      break;
    }
    const double rate = model.rate(s);
    if (rate == 0.0) {
      return -std::numeric_limits<double>::infinity();
    }
    log_lik += std::log(rate);
  }
  const auto tail_count = static_cast<double>(events.count_between(tau_star, t));
  log_lik += std::log(m) * tail_count;
  log_lik -= model.cumulative(tau_star) - tau_star;
  log_lik -= (t - tau_star) * (m - 1.0);
  return log_lik;
}

double two_sided_quantile(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("significance level must lie in (0, 1)");
  }
  return normal_quantile(1.0 - 0.5 * alpha);
}

RateInterval slope_ci_for_quantile(double m_hat, double span, double x) {
  if (!(m_hat >= 0.0)) {
    throw std::domain_error("slope estimate must be nonnegative");
  }
  if (!(span > 0.0)) {
    throw std::domain_error("window length must be positive");
  }
  if (!(x >= 0.0)) {
    throw std::domain_error("normal quantile must be nonnegative");
  }
  const double x2t = x * x / span;
  const double high = 0.5 * (x2t + 2.0 * m_hat + (x / std::sqrt(span)) * std::sqrt(x2t + 4.0 * m_hat));
  // Roots multiply to m_hat^2; dividing avoids cancellation in the lower root.
  const double low = high > 0.0 ? m_hat * m_hat / high : 0.0;
  return {low, high};
}

RateInterval slope_ci(double m_hat, double tau_star, double tau, double alpha) {
  check_window(tau_star, tau);
  return slope_ci_for_quantile(m_hat, tau - tau_star, two_sided_quantile(alpha));
}

BandCurve confidence_bands(const RateInterval& interval, std::span<const double> grid) {
  if (!(interval.low >= 0.0) || !(interval.high >= interval.low)) {
    throw std::domain_error("band needs 0 <= low <= high");
  }
  if (grid.empty()) {
    throw std::domain_error("band grid is empty");
  }
  BandCurve band;
  band.grid.assign(grid.begin(), grid.end());
  band.lower.reserve(grid.size());
  band.upper.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::domain_error("band grid must be nonnegative and strictly increasing");
    }
    band.lower.push_back(random_cdf(interval.low, grid[i]));
    band.upper.push_back(random_cdf(interval.high, grid[i]));
  }
  return band;
}

std::vector<double> uniform_grid(double h_max, std::size_t points) {
  if (!(h_max > 0.0) || points < 2) {
    throw std::domain_error("grid needs h_max > 0 and at least two points");
  }
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = h_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

void write_band_csv(std::ostream& out, const BandCurve& bands) {
  out << "h,lower,upper\n";
  for (std::size_t i = 0; i < bands.grid.size(); ++i) {
    out << format_sig(bands.grid[i]) << ',' << format_sig(bands.lower[i]) << ','
        << format_sig(bands.upper[i]) << '\n';
  }
}

VerifierResult verify_clt(double m, double t, std::size_t reps, std::uint64_t seed,
                          unsigned threads) {
  if (reps < kMinCltReps) {
    throw std::domain_error("CLT check needs at least 100 replicates");
  }
  if (!(t > 0.0)) {
    throw std::domain_error("CLT check needs t > 0");
  }
  const IntensityModel model = IntensityModel::constant(m);
  VerifierResult result{};
  result.reps = reps;
  result.statistics.assign(reps, 0.0);
  const double root_t = std::sqrt(t);
  detail::parallel_for(reps, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const auto count = static_cast<double>(simulate_count(model, 0.0, t, rng));
    result.statistics[i] = root_t * (count / t - m);
  });
  const double sd = std::sqrt(m);
  result.ks = ks_test(result.statistics, [sd](double x) { return normal_cdf(x / sd); });
  fill_moments(result);
  return result;
}

std::vector<double> verify_glivenko_cantelli(double m, std::span<const double> taus,
                                             std::size_t reps, std::uint64_t seed,
                                             unsigned threads) {
  if (taus.size() < 2) {
    throw std::domain_error("need at least two tau values");
  }
  if (reps == 0) {
    throw std::domain_error("need at least one replicate");
  }
  for (std::size_t j = 0; j < taus.size(); ++j) {
    if (!(taus[j] > 0.0) || (j > 0 && !(taus[j] > taus[j - 1]))) {
      throw std::domain_error("tau values must be positive and increasing");
    }
  }
  const IntensityModel model = IntensityModel::constant(m);
  std::vector<std::vector<double>> distances(taus.size(), std::vector<double>(reps));
  detail::parallel_for(reps, threads, [&](std::size_t i) {
    const EventTimes path = simulate_path(model, taus.back(), derive_seed(seed, i));
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const double m_hat = static_cast<double>(path.count_until(taus[j])) / taus[j];
      distances[j][i] = sup_distance_exp(m_hat, m);
    }
  });
  std::vector<double> medians;
  medians.reserve(taus.size());
  for (auto& column : distances) {
    medians.push_back(median(std::move(column)));
  }
  return medians;
}

VerifierResult verify_kolmogorov_limit(double m, double tau, std::size_t reps,
                                       std::uint64_t seed, unsigned threads) {
  if (reps < kMinKolmogorovReps) {
    throw std::domain_error("Kolmogorov-limit check needs at least 500 replicates");
  }
  if (!(tau > 0.0)) {
    throw std::domain_error("Kolmogorov-limit check needs tau > 0");
  }
  const IntensityModel model = IntensityModel::constant(m);
  VerifierResult result{};
  result.reps = reps;
  result.statistics.assign(reps, 0.0);
  const double root_tau = std::sqrt(tau);
  detail::parallel_for(reps, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const double m_hat = static_cast<double>(simulate_count(model, 0.0, tau, rng)) / tau;
    result.statistics[i] = root_tau * sup_distance_exp(m_hat, m);
  });
  // |N(0, e^-2/m)| has CDF 2 Phi(x e sqrt(m)) - 1 on x >= 0.
  const double scale = std::numbers::e * std::sqrt(m);
  result.ks = ks_test(result.statistics, [scale](double x) {
    return x <= 0.0 ? 0.0 : std::erf(x * scale / std::numbers::sqrt2);
  });
  fill_moments(result);
  return result;
}

double ci_coverage(double m, double t, double alpha, std::size_t reps, std::uint64_t seed,
                   unsigned threads) {
  if (reps == 0) {
    throw std::domain_error("need at least one replicate");
  }
  const IntensityModel model = IntensityModel::constant(m);
  const double x = two_sided_quantile(alpha);
  std::vector<unsigned char> hit(reps, 0);
  detail::parallel_for(reps, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const double m_hat = static_cast<double>(simulate_count(model, 0.0, t, rng)) / t;
    const RateInterval ci = slope_ci_for_quantile(m_hat, t, x);
    hit[i] = (ci.low <= m && m <= ci.high) ? 1 : 0;
  });
  std::size_t covered = 0;
  for (unsigned char h : hit) {
    covered += h;
  }
  return static_cast<double>(covered) / static_cast<double>(reps);
}

}  // namespace seiswait
