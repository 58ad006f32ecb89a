#include "seiswait/gof.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "parallel.hpp"
#include "seiswait/errors.hpp"
#include "seiswait/format.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/rng.hpp"
#include "seiswait/statfn.hpp"

namespace seiswait {

std::vector<double> bin_percentages(std::span<const double> samples,
                                    std::span<const double> cuts) {
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i] > cuts[i - 1])) {
      throw std::domain_error("bin cuts must be strictly increasing");
    }
  }
  if (samples.empty()) {
    throw std::domain_error("cannot bin an empty sample");
  }
  std::vector<std::size_t> counts(cuts.size() + 1, 0);
  for (double s : samples) {
    if (!(s >= 0.0)) {
      throw std::domain_error("samples must be nonnegative");
    }
    const auto bin = std::upper_bound(cuts.begin(), cuts.end(), s) - cuts.begin();
    ++counts[static_cast<std::size_t>(bin)];
  }
  std::vector<double> pct;
  pct.reserve(counts.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t c : counts) {
    pct.push_back(100.0 * static_cast<double>(c) / n);
  }
  return pct;
}

double chi_square_stat(std::span<const double> percentages, std::size_t bins) {
  if (bins < 2) {
    throw std::domain_error("need at least two bins");
  }
  if (percentages.size() != bins) {
    throw std::domain_error("expected " + std::to_string(bins) + " percentages, got " +
                            std::to_string(percentages.size()));
  }
  const double expected = 100.0 / static_cast<double>(bins);
  double stat = 0.0;
  for (double o : percentages) {
    stat += (o - expected) * (o - expected);
  }
  return stat / expected;
}

double gof_pvalue(double stat, int df) { return chi2_sf(stat, df); }

GofReport score_percentages(double t, std::span<const double> percentages) {
  const std::size_t bins = percentages.size();
  const double stat = chi_square_stat(percentages, bins);
  return {t,
          std::vector<double>(percentages.begin(), percentages.end()),
          stat,
          gof_pvalue(stat, static_cast<int>(bins) - 1),
          0,
          static_cast<int>(bins)};
}

std::vector<GofReport> table1_experiment(double m, int k, std::span<const double> t_values,
                                         std::size_t n, std::uint64_t seed, int bins,
                                         unsigned threads) {
  if (n == 0) {
    throw std::domain_error("sample size must be >= 1");
  }
  for (double t : t_values) {
    WaitingLaw{t, k, m}.validate();
  }
  const std::vector<double> cuts = breakpoints(m, bins);
  std::vector<GofReport> reports(t_values.size());
  detail::parallel_for(t_values.size(), threads, [&](std::size_t i) {
    const WaitingLaw law{t_values[i], k, m};
    const std::vector<double> draws = sample_conditional(law, n, derive_seed(seed, i));
    GofReport report = score_percentages(t_values[i], bin_percentages(draws, cuts));
    report.n = n;
    reports[i] = std::move(report);
  });
  return reports;
}

std::vector<std::pair<double, std::vector<double>>> parse_percentage_rows(std::istream& in) {
  std::vector<std::pair<double, std::vector<double>>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) {
          numeric = false;
        }
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) {
        continue;  // header
      }
      throw InputError("non-numeric value in percentage row", line_no);
    }
    if (values.size() < 3) {
      throw InputError("row needs t followed by at least two percentages", line_no);
    }
    if (width == 0) {
      width = values.size();
    } else if (values.size() != width) {
      throw InputError("rows have differing numbers of columns", line_no);
    }
    rows.emplace_back(values.front(), std::vector<double>(values.begin() + 1, values.end()));
  }
  return rows;
}

void write_gof_csv(std::ostream& out, std::span<const GofReport> reports) {
  const std::size_t bins = reports.empty() ? 10 : reports.front().percentages.size();
  out << "t";
  for (std::size_t j = 1; j <= bins; ++j) {
    out << ",p" << j;
  }
  out << ",chi2,p_value\n";
  for (const auto& r : reports) {
    out << format_sig(r.t);
    for (double p : r.percentages) {
      out << ',' << format_sig(p);
    }
    out << ',' << format_sig(r.chi2) << ',' << format_sig(r.p_value) << '\n';
  }
}

std::string gof_json(std::span<const GofReport> reports) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json row;
    row["t"] = round_sig(r.t);
    row["percentages"] = nlohmann::json::array();
    for (double p : r.percentages) {
      row["percentages"].push_back(round_sig(p));
    }
    row["chi2"] = round_sig(r.chi2);
    row["p_value"] = round_sig(r.p_value);
    row["n"] = r.n;
    doc.push_back(row);
  }
  return doc.dump(2);
}

}  // namespace seiswait
