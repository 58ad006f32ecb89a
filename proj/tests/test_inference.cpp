#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "seiswait/inference.hpp"
#include "seiswait/intensity.hpp"
#include "seiswait/nhpp.hpp"
#include "seiswait/rng.hpp"
#include "support/oracles.hpp"

namespace seiswait {
namespace {

EventTimes integer_times(std::vector<double> times, double horizon) {
  return EventTimes(std::move(times), horizon);
}

TEST(EstimateSlope, CatalogWindows) {
  // Second catalog segment: events at 53, 116, 118, 121, 153, 155, 156, 161.
  const auto seg = integer_times({53, 116, 118, 121, 153, 155, 156, 161}, 161);
  EXPECT_DOUBLE_EQ(estimate_slope(seg, 0, 53).m_hat, 1.0 / 53.0);
  EXPECT_DOUBLE_EQ(estimate_slope(seg, 0, 161).m_hat, 8.0 / 161.0);
  EXPECT_EQ(estimate_slope(seg, 0, 161).count, 8u);
  // Half-open window: the event at tau_star is excluded, the one at tau included.
  EXPECT_EQ(estimate_slope(seg, 116, 121).count, 2u);
  EXPECT_DOUBLE_EQ(estimate_slope(seg, 116, 121).m_hat, 2.0 / 5.0);
}

TEST(EstimateSlope, WithIntervalAndErrors) {
  const auto seg = integer_times({1, 2, 3}, 10);
  const auto e = estimate_slope(seg, 0, 10, 0.05);
  ASSERT_TRUE(e.interval.has_value());
  ASSERT_TRUE(e.alpha.has_value());
  EXPECT_LT(e.interval->low, e.m_hat);
  EXPECT_GT(e.interval->high, e.m_hat);
  EXPECT_FALSE(estimate_slope(seg, 0, 10).interval.has_value());
  EXPECT_THROW((void)estimate_slope(seg, 5, 5), std::domain_error);
  EXPECT_THROW((void)estimate_slope(seg, 0, 11), std::domain_error);
  EXPECT_THROW((void)estimate_slope(seg, -1, 5), std::domain_error);
}

TEST(EstimateSlope, LawOfLargeNumbers) {
  const auto model = IntensityModel::piecewise({{0.0, 3.0}, {50.0, 0.2}, {200.0, 1.5}});
  const auto path = simulate_path(model, 100000.0, 77);
  EXPECT_NEAR(estimate_slope(path, 200.0, 100000.0).m_hat, 1.5, 0.02);
}

TEST(RandomCdf, Examples) {
  EXPECT_NEAR(random_cdf(1.0 / 53.0, 63.0), 0.695, 5e-4);
  EXPECT_NEAR(random_cdf(1.0 / 53.0, 63.0), 1.0 - std::exp(-63.0 / 53.0), 1e-15);
  EXPECT_EQ(random_cdf(0.0, 5.0), 0.0);
  EXPECT_THROW((void)random_cdf(-0.1, 1.0), std::domain_error);
  EXPECT_THROW((void)random_cdf(0.1, -1.0), std::domain_error);
}

TEST(PathLikelihood, UnitRateIsZero) {
  const auto unit = IntensityModel::constant(1.0);
  const auto path = simulate_path(unit, 50.0, 3);
  EXPECT_NEAR(path_log_likelihood(path, unit, 50.0), 0.0, 1e-12);
}

TEST(PathLikelihood, ConstantRateClosedForm) {
  const double m = 2.3;
  const auto model = IntensityModel::constant(m);
  const auto path = simulate_path(model, 40.0, 5);
  const double n = static_cast<double>(path.count_until(40.0));
  EXPECT_NEAR(path_log_likelihood(path, model, 40.0), n * std::log(m) - 40.0 * (m - 1.0), 1e-9);
}

TEST(PathLikelihood, ZeroRateAtEventIsMinusInfinity) {
  const auto model = IntensityModel::piecewise({{0.0, 0.0}, {5.0, 1.0}});
  const EventTimes path({2.0, 6.0}, 10.0);
  EXPECT_EQ(path_log_likelihood(path, model, 10.0), -INFINITY);
}

TEST(PathLikelihood, GridArgmaxIsSlopeEstimate) {
  const auto base = IntensityModel::piecewise({{0.0, 0.4}, {10.0, 2.0}, {30.0, 1.1}});
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto path = simulate_path(base, 400.0, derive_seed(11, i));
    const double m_hat = estimate_slope(path, base.tail_start(), 400.0).m_hat;
    const auto f = [&](double m) {
      return path_log_likelihood(path, base.with_tail_rate(m), 400.0);
    };
    const auto [arg, value] = oracle::grid_argmax(f, 0.01, 4.0, 1e-2, 1e-5);
    EXPECT_NEAR(arg, m_hat, 1e-5) << i;
    EXPECT_GE(f(m_hat), value - 1e-12);
  }
}

TEST(SlopeCi, MatchesQuadraticRoots) {
  const auto ci = slope_ci(0.2, 0.0, 130.0, 0.05);
  const auto [low, high] = oracle::ci_roots(0.2, 130.0, two_sided_quantile(0.05));
  EXPECT_NEAR(ci.low, low, 1e-9);
  EXPECT_NEAR(ci.high, high, 1e-9);
  EXPECT_NEAR(ci.low, 0.13650, 1e-5);
  EXPECT_NEAR(ci.high, 0.29306, 1e-5);
}

TEST(SlopeCi, RootsSatisfyEquation) {
  for (double m_hat : {0.0, 1e-6, 0.05, 1.0, 30.0}) {
    for (double span : {1.0, 50.0, 1e4}) {
      for (double alpha : {0.01, 0.05, 0.3}) {
        const double x = two_sided_quantile(alpha);
        const auto ci = slope_ci(m_hat, 0.0, span, alpha);
        EXPECT_LE(ci.low, m_hat);
        EXPECT_GE(ci.high, m_hat);
        EXPECT_GE(ci.low, 0.0);
        for (double r : {ci.low, ci.high}) {
          const double lhs = span * (m_hat - r) * (m_hat - r);
          EXPECT_NEAR(lhs, x * x * r, 1e-9 * std::max(1.0, x * x * r));
        }
      }
    }
  }
}

TEST(SlopeCi, UsesWindowLength) {
  const auto a = slope_ci(0.2, 0.0, 130.0, 0.05);
  const auto b = slope_ci(0.2, 70.0, 200.0, 0.05);
  EXPECT_DOUBLE_EQ(a.low, b.low);
  EXPECT_DOUBLE_EQ(a.high, b.high);
  EXPECT_THROW((void)slope_ci(0.2, 0.0, 130.0, 0.0), std::domain_error);
  EXPECT_THROW((void)slope_ci(0.2, 0.0, 130.0, 1.0), std::domain_error);
  EXPECT_THROW((void)slope_ci(-0.2, 0.0, 130.0, 0.05), std::domain_error);
}

TEST(SlopeCi, Coverage) {
  const double cov = ci_coverage(1.0, 1000.0, 0.05, 2000, 99);
  EXPECT_NEAR(cov, 0.95, 0.02);
}

TEST(ConfidenceBands, Examples) {
  const RateInterval ci{0.13650, 0.29306};
  const std::vector<double> grid{0.0, 10.0, 20.0};
  const auto b = confidence_bands(ci, grid);
  EXPECT_EQ(b.lower[0], 0.0);
  EXPECT_EQ(b.upper[0], 0.0);
  EXPECT_NEAR(b.lower[1], 0.74462, 1e-5);
  EXPECT_NEAR(b.upper[1], 0.94663, 1e-5);
  EXPECT_NEAR(b.lower[2], 0.93478, 1e-5);
  EXPECT_NEAR(b.upper[2], 0.997152, 1e-6);
}

TEST(ConfidenceBands, OrderedAndMonotone) {
  const auto grid = uniform_grid(40.0, 401);
  ASSERT_EQ(grid.size(), 401u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_EQ(grid.back(), 40.0);
  const auto b = confidence_bands({0.1, 0.4}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LE(b.lower[i], random_cdf(0.2, grid[i]));
    EXPECT_GE(b.upper[i], random_cdf(0.2, grid[i]));
    if (i > 0) {
      EXPECT_GE(b.lower[i], b.lower[i - 1]);
      EXPECT_GE(b.upper[i], b.upper[i - 1]);
    }
  }
  EXPECT_THROW((void)confidence_bands({0.1, 0.4}, std::vector<double>{1.0, 0.5}),
               std::domain_error);
}

TEST(ConfidenceBands, CsvFormat) {
  std::ostringstream out;
  write_band_csv(out, confidence_bands({0.1, 0.2}, std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "h,lower,upper");
  EXPECT_NE(out.str().find("1,0.095162581964,0.181269246922"), std::string::npos) << out.str();
}

TEST(Verifiers, CentralLimit) {
  const auto r = verify_clt(1.0, 1e4, 2000, 5);
  EXPECT_EQ(r.reps, 2000u);
  EXPECT_GT(r.ks.p_value, 0.001);
  EXPECT_NEAR(r.variance, 1.0, 0.1);
  EXPECT_THROW((void)verify_clt(1.0, 1e4, kMinCltReps - 1, 5), std::domain_error);
}

TEST(Verifiers, GlivenkoCantelliDecreases) {
  const std::vector<double> taus{1e2, 1e3, 1e4};
  const auto med = verify_glivenko_cantelli(1.0, taus, 200, 8);
  ASSERT_EQ(med.size(), 3u);
  EXPECT_GT(med[0], med[1]);
  EXPECT_GT(med[1], med[2]);
  EXPECT_LT(med[2], 0.01);
}

TEST(Verifiers, KolmogorovLimit) {
  const auto r = verify_kolmogorov_limit(1.0, 1e4, 2000, 13);
  EXPECT_GT(r.ks.p_value, 0.001);
  const double folded_mean = std::exp(-1.0) * std::sqrt(2.0 / M_PI);
  EXPECT_NEAR(r.mean / folded_mean, 1.0, 0.1);
  EXPECT_THROW((void)verify_kolmogorov_limit(1.0, 1e4, kMinKolmogorovReps - 1, 1),
               std::domain_error);
}

TEST(Verifiers, IndependentOfThreadCount) {
  const auto a = verify_clt(2.0, 500.0, 300, 21, 1);
  const auto b = verify_clt(2.0, 500.0, 300, 21, 4);
  EXPECT_EQ(a.statistics, b.statistics);
}

}  // namespace
}  // namespace seiswait
