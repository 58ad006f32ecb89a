#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "seiswait/errors.hpp"
#include "seiswait/gof.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/rng.hpp"
#include "support/oracles.hpp"

namespace seiswait {
namespace {

const std::vector<double> kRow25{6.7, 6.4, 7.0, 8.3, 7.4, 9.2, 10.1, 11.8, 12.5, 20.6};
const std::vector<double> kRow30{7.5, 9.0, 8.4, 7.4, 7.7, 7.5, 9.9, 10.1, 13.0, 19.5};
const std::vector<double> kRow40{7.3, 8.9, 9.4, 9.2, 9.6, 8.7, 11.7, 8.2, 11.1, 15.9};
const std::vector<double> kRow50{10.3, 9.7, 8.2, 8.8, 9.3, 11.5, 8.9, 9.7, 11.1, 12.5};

TEST(ChiSquareStat, Examples) {
  EXPECT_NEAR(chi_square_stat(kRow25), 16.50, 1e-10);
  EXPECT_NEAR(chi_square_stat(kRow40), 5.35, 1e-10);
  EXPECT_NEAR(chi_square_stat(kRow30), 12.738, 1e-10);
  EXPECT_NEAR(chi_square_stat(kRow50), 1.636, 1e-10);
  EXPECT_EQ(chi_square_stat(std::vector<double>(10, 10.0)), 0.0);
  EXPECT_THROW((void)chi_square_stat(std::vector<double>(9, 10.0)), std::domain_error);
}

TEST(ChiSquareStat, PercentageScaleIdentity) {
  // Percentages of n = 1000 draws: the statistic is Pearson on counts divided by 10.
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 1000; ++i) {
      ++counts[static_cast<std::size_t>(rng.uniform() * 10.0)];
    }
    std::vector<double> pct;
    double pearson = 0.0;
    for (int c : counts) {
      pct.push_back(c / 10.0);
      pearson += (c - 100.0) * (c - 100.0) / 100.0;
    }
    EXPECT_NEAR(chi_square_stat(pct), pearson / 10.0, 1e-10);
  }
}

TEST(GofPvalue, PublishedRows) {
  EXPECT_NEAR(gof_pvalue(chi_square_stat(kRow25)), 0.057, 0.002);
  EXPECT_NEAR(gof_pvalue(chi_square_stat(kRow30)), 0.175, 0.002);
  EXPECT_NEAR(gof_pvalue(chi_square_stat(kRow40)), 0.803, 0.002);
  EXPECT_NEAR(gof_pvalue(chi_square_stat(kRow50)), 0.996, 0.002);
  EXPECT_NEAR(gof_pvalue(12.738), oracle::chi2_sf(12.738, 9), 1e-8);
}

TEST(GofPvalue, DecreasingInStatistic) {
  double prev = 1.0;
  for (int i = 0; i < 500; ++i) {
    const double p = gof_pvalue(0.1 * i);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(BinPercentages, HalfOpenBins) {
  const std::vector<double> cuts{1.0, 2.0};
  const std::vector<double> s{0.0, 0.5, 1.0, 1.5, 2.0, 7.0, 2.0, 1.99};
  const auto p = bin_percentages(s, cuts);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_DOUBLE_EQ(p[0], 25.0);
  EXPECT_DOUBLE_EQ(p[1], 37.5);
  EXPECT_DOUBLE_EQ(p[2], 37.5);
  EXPECT_THROW((void)bin_percentages(s, std::vector<double>{2.0, 1.0}), std::domain_error);
  EXPECT_THROW((void)bin_percentages(std::vector<double>{}, cuts), std::domain_error);
}

TEST(BinningExperiment, ShapeAndDeterminism) {
  const std::vector<double> ts{10, 25, 50};
  const auto a = table1_experiment(1.0, 10, ts, 1000, 7);
  const auto b = table1_experiment(1.0, 10, ts, 1000, 7, 10, 1);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].percentages, b[i].percentages);
    EXPECT_EQ(a[i].n, 1000u);
    EXPECT_NEAR(std::accumulate(a[i].percentages.begin(), a[i].percentages.end(), 0.0), 100.0,
                1e-9);
  }
  EXPECT_LT(a[0].p_value, 0.001);
  EXPECT_THROW((void)table1_experiment(1.0, 10, std::vector<double>{5.0}, 100, 1),
               InvalidLawError);
}

TEST(BinningExperiment, PvalueImprovesWithElapsedTime) {
  const std::vector<double> ts{10, 30, 50};
  std::vector<std::vector<double>> p(3);
  int big50 = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto r = table1_experiment(1.0, 10, ts, 1000, s);
    for (std::size_t i = 0; i < 3; ++i) {
      p[i].push_back(r[i].p_value);
    }
    big50 += r[2].p_value > 0.05 ? 1 : 0;
  }
  for (auto& v : p) {
    std::sort(v.begin(), v.end());
  }
  EXPECT_LE(p[0][20], p[1][20]);
  EXPECT_LE(p[1][20], p[2][20]);
  EXPECT_GT(p[1][20], 0.02);
  EXPECT_LT(p[1][20], 0.6);
  EXPECT_GE(big50, 34);
}

TEST(PercentageRows, ParseAndScore) {
  std::istringstream in("t,p1,p2,p3,p4,p5,p6,p7,p8,p9,p10\n25,6.7,6.4,7.0,8.3,7.4,9.2,10.1,11.8,12.5,20.6\n");
  const auto rows = parse_percentage_rows(in);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].first, 25.0);
  const auto rep = score_percentages(rows[0].first, rows[0].second);
  EXPECT_NEAR(rep.chi2, 16.5, 1e-10);
  EXPECT_EQ(rep.n, 0u);

  std::istringstream bad("t,a,b,c\n25,1,2,3\n30,1,2,x\n");
  EXPECT_THROW((void)parse_percentage_rows(bad), InputError);
}

TEST(GofOutput, CsvAndJson) {
  const std::vector<GofReport> reps{score_percentages(25.0, kRow25)};
  std::ostringstream csv;
  write_gof_csv(csv, reps);
  EXPECT_NE(csv.str().find("16.5"), std::string::npos);
  const auto j = nlohmann::json::parse(gof_json(reps));
  ASSERT_TRUE(j.is_object() || j.is_array());
  const auto& row = j.is_array() ? j[0] : j["rows"][0];
  EXPECT_NEAR(row["chi2"].get<double>(), 16.5, 1e-10);
}

}  // namespace
}  // namespace seiswait
