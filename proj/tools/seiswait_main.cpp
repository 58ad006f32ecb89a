// seiswait: command-line front end for simulation, goodness-of-fit runs,
// catalog analysis and Monte Carlo verifiers.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "seiswait/catalog.hpp"
#include "seiswait/errors.hpp"
#include "seiswait/format.hpp"
#include "seiswait/gof.hpp"
#include "seiswait/inference.hpp"
#include "seiswait/intensity.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/nhpp.hpp"
#include "seiswait/svg.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

// Usage and input problems map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) {
    return *seed;
  }
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageError("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write " + path);
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') {
      std::cout << '\n';
    }
    return;
  }
  auto out = open_output(path);
  out << text;
  if (!text.empty() && text.back() != '\n') {
    out << '\n';
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string model_path;
  double horizon = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_simulate(const SimulateOptions& opt) {
  const seiswait::IntensityModel model = seiswait::parse_model_spec(read_file(opt.model_path));
  if (!(opt.horizon >= 0.0)) {
    throw UsageError("--horizon must be nonnegative");
  }
  const std::uint64_t seed = resolve_seed(opt.seed);
  const seiswait::EventTimes events = seiswait::simulate_path(model, opt.horizon, seed);
  std::ostringstream csv;
  seiswait::write_events_csv(csv, events);
  std::ostream& summary = opt.out.empty() ? std::cerr : std::cout;
  emit(csv.str(), opt.out);
  summary << "events: " << events.size() << " horizon: " << seiswait::format_sig(opt.horizon)
          << " expected: " << seiswait::format_sig(model.cumulative(opt.horizon))
          << " seed: " << seed << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- gof

struct GofOptions {
  double m = 1.0;
  int k = 10;
  std::vector<double> t_values;
  std::size_t n = 1000;
  int bins = 10;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string from_percentages;
  std::string out;
  unsigned threads = 0;
};

int run_gof(const GofOptions& opt) {
  std::vector<seiswait::GofReport> reports;
  std::optional<std::uint64_t> used_seed;
  if (!opt.from_percentages.empty()) {
    std::istringstream in(read_file(opt.from_percentages));
    for (const auto& [t, pct] : seiswait::parse_percentage_rows(in)) {
      reports.push_back(seiswait::score_percentages(t, pct));
    }
  } else {
    if (opt.t_values.empty()) {
      throw UsageError("--t is required unless --from-percentages is given");
    }
    used_seed = resolve_seed(opt.seed);
    reports = seiswait::table1_experiment(opt.m, opt.k, opt.t_values, opt.n, *used_seed,
                                          opt.bins, opt.threads);
  }
  if (opt.format == "csv") {
    std::ostringstream csv;
    seiswait::write_gof_csv(csv, reports);
    emit(csv.str(), opt.out);
    if (used_seed) {
      std::cerr << "seed: " << *used_seed << '\n';
    }
    return kExitOk;
  }
  json doc = json::parse(seiswait::gof_json(reports));
  if (used_seed) {
    doc = json{{"seed", *used_seed}, {"m", opt.m}, {"k", opt.k}, {"n", opt.n},
               {"bins", opt.bins}, {"reports", doc}};
  }
  emit(doc.dump(2), opt.out);
  return kExitOk;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeOptions {
  std::string catalog;
  double major_threshold = seiswait::kDefaultMajorThreshold;
  double min_magnitude = seiswait::kDefaultMinimumMagnitude;
  std::vector<int> compare_t;
  bool include_closing = false;
  std::size_t compare_segment = 2;
  bool bands = false;
  double alpha = 0.05;
  double h_max = 30.0;
  std::size_t grid_points = 301;
  std::optional<std::size_t> band_segment;
  std::optional<int> band_t;
  std::string band_csv;
  std::string out_svg;
  std::string comparison_dir;
  std::string out;
};

json comparison_json(const seiswait::CatalogSegment& seg, int t, bool include_closing) {
  const seiswait::CdfComparison cmp = seiswait::compare_cdfs(seg, t, include_closing);
  json rows = json::array();
  for (const auto& r : cmp.rows) {
    rows.push_back({{"h", seiswait::round_sig(r.h)},
                    {"empirical", seiswait::round_sig(r.empirical)},
                    {"estimated", seiswait::round_sig(r.estimated)},
                    {"abs_difference", seiswait::round_sig(r.abs_difference)}});
  }
  json doc{{"t", t},
           {"m_hat_num", cmp.slope.numerator},
           {"m_hat_den", cmp.slope.denominator},
           {"rows", rows}};
  return doc;
}

int run_analyze(const AnalyzeOptions& opt) {
  std::vector<seiswait::CatalogEvent> events;
  if (opt.catalog.empty()) {
    events = seiswait::reference_catalog();
  } else {
    std::istringstream in(read_file(opt.catalog));
    events = seiswait::parse_catalog(in);
  }
  const seiswait::Segmentation seg =
      seiswait::segment_by_major(events, opt.major_threshold, opt.min_magnitude);
  for (const auto& w : seg.warnings) {
    std::cerr << "warning: " << w << '\n';
  }

  json doc = json::parse(seiswait::slope_series_json(seg));
  doc["catalog"] = opt.catalog.empty() ? "embedded:area_a" : opt.catalog;
  doc["events"] = events.size();

  if (!opt.compare_t.empty()) {
    if (opt.compare_segment == 0 || opt.compare_segment > seg.segments.size()) {
      throw UsageError("--compare-segment out of range");
    }
    const auto& segment = seg.segments[opt.compare_segment - 1];
    json comparisons = json::array();
    for (int t : opt.compare_t) {
      json cmp = comparison_json(segment, t, opt.include_closing);
      if (opt.catalog.empty() && opt.compare_segment == 2) {
        if (const auto* ref = seiswait::find_reference_cdf_row(t)) {
          const seiswait::CdfAudit audit = seiswait::audit_reference_row(segment, *ref);
          json entries = json::array();
          for (const auto& e : audit.entries) {
            entries.push_back({{"h", e.h},
                               {"published", e.published},
                               {"recomputed", seiswait::round_sig(e.recomputed)},
                               {"deviation", seiswait::round_sig(e.deviation)}});
          }
          cmp["reference_audit"] = {{"reproducible", audit.reproducible},
                                    {"tolerance", audit.tolerance},
                                    {"max_deviation", seiswait::round_sig(audit.max_deviation)},
                                    {"note", audit.note},
                                    {"entries", entries}};
          if (!audit.reproducible) {
            std::cerr << "discrepancy: " << audit.note << '\n';
          }
        }
      }
      if (!opt.comparison_dir.empty()) {
        std::filesystem::create_directories(opt.comparison_dir);
        std::ostringstream csv;
        seiswait::write_comparison_csv(
            csv, seiswait::compare_cdfs(segment, t, opt.include_closing));
        emit(csv.str(), opt.comparison_dir + "/compare_t" + std::to_string(t) + ".csv");
      }
      comparisons.push_back(cmp);
    }
    doc["comparisons"] = comparisons;
  }

  if (opt.bands) {
    if (seg.segments.empty()) {
      throw UsageError("no segments to build bands from");
    }
    const std::size_t index = opt.band_segment.value_or(seg.segments.size());
    if (index == 0 || index > seg.segments.size()) {
      throw UsageError("--band-segment out of range");
    }
    const auto& segment = seg.segments[index - 1];
    if (segment.relative_times.empty()) {
      throw UsageError("band segment has no events after its anchor");
    }
    const int t = opt.band_t.value_or(segment.relative_times.back());
    if (t <= 0) {
      throw UsageError("--band-t must be positive");
    }
    const seiswait::SlopePoint slope = seiswait::slope_at(segment, t);
    const double m_hat = slope.m_hat;
    const double x = seiswait::two_sided_quantile(opt.alpha);
    const seiswait::RateInterval ci = seiswait::slope_ci_for_quantile(m_hat, static_cast<double>(t), x);
    const seiswait::BandCurve band =
        seiswait::confidence_bands(ci, seiswait::uniform_grid(opt.h_max, opt.grid_points));
    doc["bands"] = {{"segment", index},
                    {"anchor_year", segment.anchor_year},
                    {"t", t},
                    {"alpha", opt.alpha},
                    {"x_alpha", seiswait::round_sig(x)},
                    {"m_hat_num", slope.numerator},
                    {"m_hat_den", slope.denominator},
                    {"m_hat", seiswait::round_sig(m_hat)},
                    {"ci_low", seiswait::round_sig(ci.low)},
                    {"ci_high", seiswait::round_sig(ci.high)},
                    {"h_max", opt.h_max}};
    if (!opt.band_csv.empty()) {
      std::ostringstream csv;
      seiswait::write_band_csv(csv, band);
      emit(csv.str(), opt.band_csv);
      doc["bands"]["csv"] = opt.band_csv;
    }
    if (!opt.out_svg.empty()) {
      const int percent = static_cast<int>(std::lround(100.0 * (1.0 - opt.alpha)));
      emit(seiswait::render_band_svg(band, m_hat,
                                     std::to_string(percent) + "% confidence bands for G, t = " +
                                         seiswait::format_sig(t, 6)),
           opt.out_svg);
      doc["bands"]["svg"] = opt.out_svg;
    }
  }
  emit(doc.dump(2), opt.out);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string mode;
  double m = 1.0;
  std::vector<double> t_values;
  std::size_t reps = 2000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string out;
};

json verifier_json(const seiswait::VerifierResult& r) {
  return {{"statistic", seiswait::round_sig(r.ks.statistic)},
          {"p_value", seiswait::round_sig(r.ks.p_value)},
          {"reps", r.reps},
          {"mean", seiswait::round_sig(r.mean)},
          {"variance", seiswait::round_sig(r.variance)}};
}

int run_verify(const VerifyOptions& opt) {
  const std::uint64_t seed = resolve_seed(opt.seed);
  json doc{{"mode", opt.mode}, {"m", opt.m}, {"reps", opt.reps}, {"seed", seed}};
  if (opt.t_values.empty()) {
    throw UsageError("--t is required");
  }
  if (opt.mode == "clt") {
    if (opt.reps < seiswait::kMinCltReps) {
      throw UsageError("clt needs --reps >= " + std::to_string(seiswait::kMinCltReps));
    }
    const double t = opt.t_values.front();
    doc["t"] = t;
    doc["result"] = verifier_json(seiswait::verify_clt(opt.m, t, opt.reps, seed, opt.threads));
    doc["reference"] = {{"law", "normal"}, {"variance", opt.m}};
  } else if (opt.mode == "kolmogorov") {
    if (opt.reps < seiswait::kMinKolmogorovReps) {
      throw UsageError("kolmogorov needs --reps >= " +
                       std::to_string(seiswait::kMinKolmogorovReps));
    }
    const double t = opt.t_values.front();
    doc["t"] = t;
    doc["result"] =
        verifier_json(seiswait::verify_kolmogorov_limit(opt.m, t, opt.reps, seed, opt.threads));
    doc["reference"] = {{"law", "folded_normal"},
                        {"variance", seiswait::round_sig(std::exp(-2.0) / opt.m)}};
  } else if (opt.mode == "gc") {
    if (opt.t_values.size() < 2) {
      throw UsageError("gc needs at least two --t values");
    }
    const auto medians =
        seiswait::verify_glivenko_cantelli(opt.m, opt.t_values, opt.reps, seed, opt.threads);
    json rows = json::array();
    bool decreasing = true;
    for (std::size_t i = 0; i < medians.size(); ++i) {
      rows.push_back({{"tau", opt.t_values[i]},
                      {"median_sup_distance", seiswait::round_sig(medians[i])}});
      if (i > 0 && !(medians[i] < medians[i - 1])) {
        decreasing = false;
      }
    }
    doc["medians"] = rows;
    doc["strictly_decreasing"] = decreasing;
  } else {
    throw UsageError("unknown verify mode '" + opt.mode + "'");
  }
  emit(doc.dump(2), opt.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waiting-time laws for large events under non-homogeneous Poisson processes"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate one NHPP path to an event CSV");
  simulate->add_option("--model", sim.model_path, "Intensity model spec (JSON)")->required();
  simulate->add_option("--horizon", sim.horizon, "Observation horizon")->required();
  simulate->add_option("--seed", sim.seed, "Master seed (random if omitted)");
  simulate->add_option("--out", sim.out, "Output CSV (stdout if omitted)");

  GofOptions gof;
  auto* gof_cmd = app.add_subcommand("gof", "Equiprobable-bin chi-square experiment");
  gof_cmd->add_option("--m", gof.m, "Asymptotic slope")->capture_default_str();
  gof_cmd->add_option("--k", gof.k, "Shock index")->capture_default_str();
  gof_cmd->add_option("--t", gof.t_values, "Elapsed times")->delimiter(',');
  gof_cmd->add_option("--n", gof.n, "Draws per t")->capture_default_str();
  gof_cmd->add_option("--bins", gof.bins, "Number of bins")->capture_default_str();
  gof_cmd->add_option("--seed", gof.seed, "Master seed (random if omitted)");
  gof_cmd->add_option("--format", gof.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  gof_cmd->add_option("--from-percentages", gof.from_percentages,
                      "CSV rows t,p1..pr to score instead of simulating");
  gof_cmd->add_option("--threads", gof.threads, "Worker threads (0 = auto)");
  gof_cmd->add_option("--out", gof.out, "Output file (stdout if omitted)");

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Segment a catalog and estimate slopes");
  analyze->add_option("--catalog", an.catalog, "Catalog CSV (embedded Area A catalog if omitted)");
  analyze->add_option("--major-threshold", an.major_threshold)->capture_default_str();
  analyze->add_option("--min-magnitude", an.min_magnitude)->capture_default_str();
  analyze->add_option("--compare-t", an.compare_t, "Relative times for CDF comparison")
      ->delimiter(',');
  analyze->add_option("--compare-segment", an.compare_segment, "1-based segment for --compare-t")
      ->capture_default_str();
  analyze->add_flag("--include-closing", an.include_closing,
                    "Count the closing major event in the empirical CDF");
  analyze->add_option("--comparison-dir", an.comparison_dir, "Write compare_t<T>.csv files here");
  analyze->add_flag("--bands", an.bands, "Compute confidence bands");
  analyze->add_option("--alpha", an.alpha)->capture_default_str();
  analyze->add_option("--h-max", an.h_max)->capture_default_str();
  analyze->add_option("--grid-points", an.grid_points)->capture_default_str();
  analyze->add_option("--band-segment", an.band_segment, "1-based segment (default: last)");
  analyze->add_option("--band-t", an.band_t, "Elapsed time (default: last event of segment)");
  analyze->add_option("--band-csv", an.band_csv, "Band CSV output");
  analyze->add_option("--out-svg", an.out_svg, "Band SVG output");
  analyze->add_option("--out", an.out, "JSON output (stdout if omitted)");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Monte Carlo checks of the limit theorems");
  verify->add_option("mode", ver.mode, "clt | gc | kolmogorov")
      ->required()
      ->check(CLI::IsMember({"clt", "gc", "kolmogorov"}));
  verify->add_option("--m", ver.m)->capture_default_str();
  verify->add_option("--t", ver.t_values, "Observation time(s)")->delimiter(',')->required();
  verify->add_option("--reps", ver.reps)->capture_default_str();
  verify->add_option("--seed", ver.seed, "Master seed (random if omitted)");
  verify->add_option("--threads", ver.threads, "Worker threads (0 = auto)");
  verify->add_option("--out", ver.out, "JSON output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim);
    }
    if (gof_cmd->parsed()) {
      return run_gof(gof);
    }
    if (analyze->parsed()) {
      return run_analyze(an);
    }
    if (verify->parsed()) {
      return run_verify(ver);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const seiswait::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
