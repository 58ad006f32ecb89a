// Acceptance checks: one PASS/FAIL line per criterion. `--only N` runs a single one.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "seiswait/catalog.hpp"
#include "seiswait/gof.hpp"
#include "seiswait/inference.hpp"
#include "seiswait/intensity.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/nhpp.hpp"
#include "seiswait/rng.hpp"
#include "seiswait/statfn.hpp"
#include "support/oracles.hpp"

using namespace seiswait;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome catalog_fractions() {
  const auto seg = segment_by_major(reference_catalog(), 8.5);
  if (seg.segments.size() != 3) {
    return {false, fmt("%zu segments", seg.segments.size())};
  }
  using Row = std::pair<int, std::pair<long, long>>;
  const std::vector<std::vector<Row>> expected = {
      {{0, {0, 1}}, {11, {1, 11}}, {77, {2, 77}}},
      {{0, {0, 1}}, {53, {1, 53}}, {116, {2, 116}}, {118, {3, 118}}, {121, {4, 121}},
       {153, {5, 153}}, {155, {6, 155}}, {156, {7, 156}}, {161, {8, 161}}},
      {{0, {0, 1}},     {1, {1, 1}},      {28, {2, 28}},    {29, {3, 29}},    {29, {4, 29}},
       {32, {5, 32}},   {34, {6, 34}},    {48, {7, 48}},    {51, {8, 51}},    {56, {9, 56}},
       {59, {10, 59}},  {63, {11, 63}},   {68, {12, 68}},   {70, {13, 70}},   {71, {14, 71}},
       {76, {15, 76}},  {79, {16, 79}},   {88, {17, 88}},   {89, {18, 89}},   {90, {19, 90}},
       {93, {20, 93}},  {106, {21, 106}}, {110, {22, 110}}, {111, {23, 111}}, {118, {24, 118}},
       {128, {25, 128}}, {130, {26, 130}}}};
  std::size_t rows = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    const auto series = slope_series(seg.segments[s]);
    if (series.size() != expected[s].size()) {
      return {false, fmt("segment %zu has %zu rows", s + 1, series.size())};
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
      const auto& [t, frac] = expected[s][i];
      if (series[i].t != t || series[i].numerator != frac.first ||
          series[i].denominator != frac.second) {
        return {false, fmt("segment %zu row %zu: t=%d %lld/%lld", s + 1, i, series[i].t,
                           static_cast<long long>(series[i].numerator),
                           static_cast<long long>(series[i].denominator))};
      }
      ++rows;
    }
  }
  return {true, fmt("%zu rows equal as exact fractions", rows)};
}

Outcome published_cdf_row() {
  const auto seg = segment_by_major(reference_catalog()).segments[1];
  const auto* row = find_reference_cdf_row(53);
  const std::vector<double> hs{63, 65, 68, 100, 102, 103, 108};
  const std::vector<double> published{0.70, 0.71, 0.72, 0.85, 0.86, 0.86, 0.87};
  bool pass = row != nullptr;
  std::ostringstream d;
  double worst = 0.0;
  double worst_h = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double g = random_cdf(slope_at(seg, 53).m_hat, hs[i]);
    const double dev = std::abs(g - published[i]);
    if (dev > worst) {
      worst = dev;
      worst_h = hs[i];
    }
    if (dev > 0.005) {
      pass = false;
      d << fmt("h=%g: %.5f vs %.2f (dev %.5f); ", hs[i], g, published[i], dev);
    }
  }
  int flagged = 0;
  for (int t : {116, 118, 121}) {
    const auto* r = find_reference_cdf_row(t);
    if (r != nullptr && !audit_reference_row(seg, *r).reproducible) {
      ++flagged;
    }
  }
  pass = pass && flagged == 3;
  d << fmt("max dev %.5f at h=%g; later rows flagged non-reproducible: %d/3", worst, worst_h,
           flagged);
  return {pass, d.str()};
}

Outcome published_pvalues() {
  const std::vector<std::pair<std::vector<double>, double>> finite = {
      {{6.7, 6.4, 7.0, 8.3, 7.4, 9.2, 10.1, 11.8, 12.5, 20.6}, 0.057},
      {{7.5, 9.0, 8.4, 7.4, 7.7, 7.5, 9.9, 10.1, 13.0, 19.5}, 0.175},
      {{7.3, 8.9, 9.4, 9.2, 9.6, 8.7, 11.7, 8.2, 11.1, 15.9}, 0.803},
      {{10.3, 9.7, 8.2, 8.8, 9.3, 11.5, 8.9, 9.7, 11.1, 12.5}, 0.996}};
  const std::vector<std::vector<double>> tiny = {
      {1.1, 1.7, 1.2, 2.0, 1.4, 3.4, 4.9, 7.4, 12.0, 64.9},
      {5.0, 6.3, 6.8, 6.4, 6.8, 9.2, 10.6, 10.1, 13.4, 25.4}};
  bool pass = true;
  std::ostringstream d;
  for (const auto& [row, p] : finite) {
    const double got = gof_pvalue(chi_square_stat(row));
    pass = pass && std::abs(got - p) <= 0.002;
    d << fmt("%.4f(%.3f) ", got, p);
  }
  for (const auto& row : tiny) {
    const double got = gof_pvalue(chi_square_stat(row));
    pass = pass && got < 0.001;
    d << fmt("%.2e(<0.001) ", got);
  }
  return {pass, d.str()};
}

Outcome stochastic_table() {
  const std::vector<double> ts{10, 25, 50};
  std::vector<std::vector<double>> p(ts.size());
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto reps = table1_experiment(1.0, 10, ts, 1000, seed);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      p[i].push_back(reps[i].p_value);
    }
  }
  const auto count = [](const std::vector<double>& v, auto pred) {
    return std::count_if(v.begin(), v.end(), pred);
  };
  const long t10 = count(p[0], [](double x) { return x < 0.001; });
  const long t50 = count(p[2], [](double x) { return x > 0.05; });
  const double m10 = median(p[0]);
  const double m25 = median(p[1]);
  const double m50 = median(p[2]);
  const bool pass = t10 >= 99 && t50 >= 90 && m10 <= m25 && m25 <= m50;
  return {pass, fmt("t=10 p<0.001 in %ld/100; t=50 p>0.05 in %ld/100; medians %.3g, %.3g, %.3g",
                    t10, t50, m10, m25, m50)};
}

Outcome interval_and_coverage() {
  const double x = two_sided_quantile(0.05);
  const auto ci = slope_ci(0.2, 0.0, 130.0, 0.05);
  const auto [lo, hi] = oracle::ci_roots(0.2, 130.0, x);
  const double cov = ci_coverage(1.0, 1000.0, 0.05, 5000, 2024);
  const bool pass = std::abs(ci.low - lo) <= 1e-6 && std::abs(ci.high - hi) <= 1e-6 &&
                    std::abs(ci.low - 0.13650) <= 1e-4 && std::abs(ci.high - 0.29306) <= 1e-4 &&
                    std::abs(cov - 0.95) <= 0.02;
  return {pass, fmt("CI (%.6f, %.6f) vs oracle (%.6f, %.6f); coverage %.4f", ci.low, ci.high, lo,
                    hi, cov)};
}

Outcome central_limit() {
  int passes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    passes += verify_clt(1.0, 1e4, 2000, seed).ks.p_value > 0.01 ? 1 : 0;
  }
  return {passes >= 95, fmt("KS passes at 0.01 for %d/100 seeds", passes)};
}

Outcome uniform_convergence() {
  const std::vector<double> taus{1e2, 1e3, 1e4};
  const auto med = verify_glivenko_cantelli(1.0, taus, 500, 31);
  const bool pass = med[0] > med[1] && med[1] > med[2] && med[2] < 0.01;
  return {pass, fmt("medians %.5f > %.5f > %.5f", med[0], med[1], med[2])};
}

Outcome kolmogorov_limit() {
  const double folded_mean = std::exp(-1.0) * std::sqrt(2.0 / std::numbers::pi);
  int passes = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = verify_kolmogorov_limit(1.0, 1e4, 2000, seed);
    passes += r.ks.p_value > 0.01 ? 1 : 0;
    worst = std::max(worst, std::abs(r.mean / folded_mean - 1.0));
  }
  return {passes >= 90 && worst <= 0.10,
          fmt("KS passes at 0.01 for %d/100 seeds; worst relative mean error %.4f", passes,
              worst)};
}

Outcome oracle_equivalences() {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> rate(0.05, 5.0);
  double sup_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = rate(gen);
    const double b = rate(gen);
    const auto f = [&](double h) { return std::abs(std::exp(-a * h) - std::exp(-b * h)); };
    const double hi = 40.0 / std::min(a, b);
    const auto g = oracle::grid_argmax(f, 0.0, hi, hi * 1e-5, hi * 1e-9);
    sup_err = std::max(sup_err, std::abs(sup_distance_exp(a, b) - g.second));
  }

  const std::vector<IntensityModel> models = {
      IntensityModel::constant(1.0),
      IntensityModel::piecewise({{0.0, 2.0}, {3.0, 0.5}, {8.0, 1.0}})};
  double mass_err = 0.0;
  for (const auto& model : models) {
    for (int k : {1, 2, 10}) {
      const auto f = [&](double t) { return jump_time_pdf(model, k, t); };
      std::vector<double> edges{0.0};
      for (const auto& s : model.segments()) {
        if (s.start > 0.0) {
          edges.push_back(s.start);
        }
      }
      edges.push_back(model.inverse_cumulative(k + 80.0));
      double total = 0.0;
      for (std::size_t i = 1; i < edges.size(); ++i) {
        total += oracle::gauss_kronrod(f, edges[i - 1], edges[i], 1e-12);
      }
      mass_err = std::max(mass_err, std::abs(total - 1.0));
    }
  }

  const double step = 1e-3;
  double ml_err = 0.0;
  std::uniform_real_distribution<double> tail(0.3, 3.0);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto model = IntensityModel::piecewise({{0.0, 1.5}, {20.0, tail(gen)}});
    const auto path = simulate_path(model, 300.0, derive_seed(99, i));
    const double m_hat = estimate_slope(path, model.tail_start(), 300.0).m_hat;
    const auto ll = [&](double m) {
      return path_log_likelihood(path, model.with_tail_rate(m), 300.0);
    };
    const auto g = oracle::grid_argmax(ll, step, 6.0, step, 0.0);
    ml_err = std::max(ml_err, std::abs(g.first - m_hat));
  }
  const bool pass = sup_err <= 1e-9 && mass_err <= 1e-6 && ml_err <= step;
  return {pass, fmt("sup distance err %.2e; density mass err %.2e; ML argmax err %.2e (grid %g)",
                    sup_err, mass_err, ml_err, step)};
}

Outcome special_functions() {
  double chi2_err = 0.0;
  for (double x : {0.1, 1.0, 2.5, 5.0, 10.0, 20.0}) {
    chi2_err = std::max(chi2_err, std::abs(chi2_sf(x, 2) - std::exp(-x / 2.0)));
  }
  const double q = normal_quantile(0.975);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> shape(2.0, 30.0);
  std::uniform_real_distribution<double> frac(0.05, 3.0);
  double gamma_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double s = shape(gen);
    const double x = s * frac(gen);
    gamma_err = std::max(gamma_err, std::abs(regularized_lower_gamma(s, x) - oracle::lower_gamma(s, x)));
  }
  const bool pass = chi2_err <= 1e-10 && std::abs(q - 1.959964) <= 1e-5 && gamma_err <= 1e-8;
  return {pass, fmt("chi2 df=2 err %.2e; z_0.975 = %.7f; incomplete gamma err %.2e", chi2_err,
                    q, gamma_err)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "catalog slope fractions", 1, catalog_fractions},
      {2, "published waiting-time CDF row", 1, published_cdf_row},
      {3, "published chi-square p-values", 1, published_pvalues},
      {4, "simulated chi-square experiment", 30, stochastic_table},
      {5, "slope interval and coverage", 60, interval_and_coverage},
      {6, "central limit for the slope", 60, central_limit},
      {7, "uniform convergence of the plug-in CDF", 60, uniform_convergence},
      {8, "folded-normal limit of the sup distance", 90, kolmogorov_limit},
      {9, "oracle equivalences", 30, oracle_equivalences},
      {10, "special functions", 10, special_functions},
  };
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) {
      continue;
    }
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    std::printf("AC%d %s: %s (%.2fs, budget %gs%s) %s\n", c.id, pass ? "PASS" : "FAIL", c.name,
                secs, c.budget_s, in_time ? "" : ", over budget", o.detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
