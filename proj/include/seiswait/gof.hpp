#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace seiswait {

// One row of the equiprobable-binning experiment: observed percentages of
// draws from G_t in the bins cut at breakpoints(m, r), scored against the
// uniform expectation 100/r per bin.
struct GofReport {
  double t;
  std::vector<double> percentages;
  double chi2;
  double p_value;
  std::size_t n;
  int bins;
};

// Percentages over [0,c_1), [c_1,c_2), ..., [c_last, inf). Cuts must be
// strictly increasing.
[[nodiscard]] std::vector<double> bin_percentages(std::span<const double> samples,
                                                  std::span<const double> cuts);

// Pearson statistic on the percentage scale, sum_j (O_j - E)^2 / E with
// E = 100 / bins. For ten bins this is sum (O_j - 10)^2 / 10.
[[nodiscard]] double chi_square_stat(std::span<const double> percentages,
                                     std::size_t bins = 10);

// P(chi2(df) >= stat).
[[nodiscard]] double gof_pvalue(double stat, int df = 9);

// Scores given percentages without simulating (n is reported as 0).
[[nodiscard]] GofReport score_percentages(double t, std::span<const double> percentages);

// For each t: draw n values from G_t (k, m fixed), bin at breakpoints(m, bins)
// and score. Row i uses the substream derive_seed(seed, i).
[[nodiscard]] std::vector<GofReport> table1_experiment(double m, int k,
                                                       std::span<const double> t_values,
                                                       std::size_t n, std::uint64_t seed,
                                                       int bins = 10, unsigned threads = 0);

// Rows `t,p1,...,pr`; an optional header line is skipped. Throws InputError.
[[nodiscard]] std::vector<std::pair<double, std::vector<double>>> parse_percentage_rows(
    std::istream& in);

void write_gof_csv(std::ostream& out, std::span<const GofReport> reports);
[[nodiscard]] std::string gof_json(std::span<const GofReport> reports);

}  // namespace seiswait
