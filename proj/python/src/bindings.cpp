#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "seiswait/catalog.hpp"
#include "seiswait/errors.hpp"
#include "seiswait/gof.hpp"
#include "seiswait/inference.hpp"
#include "seiswait/intensity.hpp"
#include "seiswait/limitlaw.hpp"
#include "seiswait/nhpp.hpp"
#include "seiswait/statfn.hpp"

namespace py = pybind11;
using namespace seiswait;

namespace {

EventTimes events_from(const std::vector<double>& times, double horizon) {
  return EventTimes(times, horizon);
}

py::dict slope_dict(const SlopeEstimate& e) {
  py::dict d;
  d["m_hat"] = e.m_hat;
  d["tau_star"] = e.tau_star;
  d["tau"] = e.tau;
  d["count"] = e.count;
  if (e.interval) {
    d["alpha"] = *e.alpha;
    d["interval"] = py::make_tuple(e.interval->low, e.interval->high);
  }
  return d;
}

py::dict verifier_dict(const VerifierResult& r) {
  py::dict d;
  d["ks_statistic"] = r.ks.statistic;
  d["p_value"] = r.ks.p_value;
  d["reps"] = r.reps;
  d["mean"] = r.mean;
  d["variance"] = r.variance;
  d["statistics"] = r.statistics;
  return d;
}

py::dict segment_dict(const CatalogSegment& s) {
  py::dict d;
  d["anchor_year"] = s.anchor_year;
  d["anchor_magnitude"] = s.anchor_magnitude;
  d["relative_times"] = s.relative_times;
  d["magnitudes"] = s.magnitudes;
  d["closed"] = s.closed;
  d["closing_time"] = s.closing_time ? py::object(py::int_(*s.closing_time)) : py::object(py::none());
  py::list rows;
  for (const auto& p : slope_series(s)) {
    rows.append(py::make_tuple(p.t, p.numerator, p.denominator, p.m_hat));
  }
  d["slope_series"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Waiting-time laws for non-homogeneous Poisson processes";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

  py::class_<IntensityModel>(m, "IntensityModel")
      .def_static("constant", &IntensityModel::constant, py::arg("rate"))
      .def_static(
          "piecewise",
          [](const std::vector<std::pair<double, double>>& segs, std::optional<double> tail_start) {
            std::vector<RateSegment> s;
            for (const auto& [start, rate] : segs) {
              s.push_back({start, rate});
            }
            return tail_start ? IntensityModel::piecewise(std::move(s), *tail_start)
                              : IntensityModel::piecewise(std::move(s));
          },
          py::arg("segments"), py::arg("tail_start") = py::none())
      .def_static("from_rate_function", &IntensityModel::from_rate_function, py::arg("rate"),
                  py::arg("tail_start"), py::arg("tail_rate"), py::arg("cells") = 256)
      .def_static("from_spec", [](const std::string& text) { return parse_model_spec(text); })
      .def("to_spec", [](const IntensityModel& self) { return to_model_spec(self); })
      .def("rate", &IntensityModel::rate)
      .def("cumulative", &IntensityModel::cumulative)
      .def("inverse_cumulative", &IntensityModel::inverse_cumulative)
      .def_property_readonly("asymptotic_slope", &IntensityModel::asymptotic_slope)
      .def_property_readonly("tail_start", &IntensityModel::tail_start)
      .def("with_tail_rate", &IntensityModel::with_tail_rate);

  m.def("simulate_path",
        [](const IntensityModel& model, double horizon, std::uint64_t seed) {
          return simulate_path(model, horizon, seed).times();
        },
        py::arg("model"), py::arg("horizon"), py::arg("seed"));
  m.def("jump_time_pdf", &jump_time_pdf, py::arg("model"), py::arg("k"), py::arg("t"));
  m.def("sample_jump_time",
        py::overload_cast<const IntensityModel&, int, std::uint64_t>(&sample_jump_time),
        py::arg("model"), py::arg("k"), py::arg("seed"));

  m.def("limit_cdf", &limit_cdf, py::arg("slope"), py::arg("h"));
  m.def("conditional_cdf",
        [](double t, int k, double slope, double h) { return conditional_cdf({t, k, slope}, h); },
        py::arg("t"), py::arg("k"), py::arg("slope"), py::arg("h"));
  m.def("conditional_quantile",
        [](double t, int k, double slope, double u) {
          return conditional_quantile({t, k, slope}, u);
        },
        py::arg("t"), py::arg("k"), py::arg("slope"), py::arg("u"));
  m.def("sample_conditional",
        [](double t, int k, double slope, std::size_t n, std::uint64_t seed) {
          return sample_conditional({t, k, slope}, n, seed);
        },
        py::arg("t"), py::arg("k"), py::arg("slope"), py::arg("n"), py::arg("seed"));
  m.def("breakpoints", &breakpoints, py::arg("slope"), py::arg("bins") = 10);
  m.def("sup_distance_exp", &sup_distance_exp, py::arg("a"), py::arg("b"));

  m.def("regularized_lower_gamma", &regularized_lower_gamma, py::arg("s"), py::arg("x"));
  m.def("chi2_sf", &chi2_sf, py::arg("x"), py::arg("df"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("kolmogorov_sf", &kolmogorov_sf, py::arg("z"));

  m.def("estimate_slope",
        [](const std::vector<double>& times, double horizon, double tau_star, double tau,
           std::optional<double> alpha) {
          const auto ev = events_from(times, horizon);
          return slope_dict(alpha ? estimate_slope(ev, tau_star, tau, *alpha)
                                  : estimate_slope(ev, tau_star, tau));
        },
        py::arg("times"), py::arg("horizon"), py::arg("tau_star"), py::arg("tau"),
        py::arg("alpha") = py::none());
  m.def("path_log_likelihood",
        [](const std::vector<double>& times, double horizon, const IntensityModel& model,
           double t) { return path_log_likelihood(events_from(times, horizon), model, t); },
        py::arg("times"), py::arg("horizon"), py::arg("model"), py::arg("t"));
  m.def("slope_ci",
        [](double m_hat, double tau_star, double tau, double alpha) {
          const auto ci = slope_ci(m_hat, tau_star, tau, alpha);
          return py::make_tuple(ci.low, ci.high);
        },
        py::arg("m_hat"), py::arg("tau_star"), py::arg("tau"), py::arg("alpha") = 0.05);
  m.def("confidence_bands",
        [](double low, double high, const std::vector<double>& grid) {
          const auto b = confidence_bands({low, high}, grid);
          return py::make_tuple(b.lower, b.upper);
        },
        py::arg("low"), py::arg("high"), py::arg("grid"));

  m.def("chi_square_stat",
        [](const std::vector<double>& pcts) { return chi_square_stat(pcts, pcts.size()); },
        py::arg("percentages"));
  m.def("gof_pvalue", &gof_pvalue, py::arg("stat"), py::arg("df") = 9);
  m.def("table1_experiment",
        [](double slope, int k, const std::vector<double>& ts, std::size_t n, std::uint64_t seed,
           int bins, unsigned threads) {
          py::list out;
          for (const auto& r : table1_experiment(slope, k, ts, n, seed, bins, threads)) {
            py::dict d;
            d["t"] = r.t;
            d["percentages"] = r.percentages;
            d["chi2"] = r.chi2;
            d["p_value"] = r.p_value;
            out.append(d);
          }
          return out;
        },
        py::arg("slope"), py::arg("k"), py::arg("t_values"), py::arg("n") = 1000,
        py::arg("seed") = 0, py::arg("bins") = 10, py::arg("threads") = 0);

  m.def("reference_catalog", [] {
    py::list out;
    for (const auto& e : reference_catalog()) {
      out.append(py::make_tuple(e.year, e.magnitude));
    }
    return out;
  });
  m.def("segment_catalog",
        [](std::optional<std::string> csv, double major_threshold, double min_magnitude) {
          const auto events = csv ? parse_catalog_text(*csv) : reference_catalog();
          const auto seg = segment_by_major(events, major_threshold, min_magnitude);
          py::list segments;
          for (const auto& s : seg.segments) {
            segments.append(segment_dict(s));
          }
          py::dict d;
          d["segments"] = segments;
          d["warnings"] = seg.warnings;
          return d;
        },
        py::arg("csv") = py::none(), py::arg("major_threshold") = kDefaultMajorThreshold,
        py::arg("min_magnitude") = kDefaultMinimumMagnitude);

  m.def("verify_clt",
        [](double slope, double t, std::size_t reps, std::uint64_t seed, unsigned threads) {
          return verifier_dict(verify_clt(slope, t, reps, seed, threads));
        },
        py::arg("slope"), py::arg("t"), py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);
  m.def("verify_kolmogorov_limit",
        [](double slope, double tau, std::size_t reps, std::uint64_t seed, unsigned threads) {
          return verifier_dict(verify_kolmogorov_limit(slope, tau, reps, seed, threads));
        },
        py::arg("slope"), py::arg("tau"), py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);
  m.def("verify_glivenko_cantelli", &verify_glivenko_cantelli, py::arg("slope"), py::arg("taus"),
        py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);
  m.def("ci_coverage", &ci_coverage, py::arg("slope"), py::arg("t"), py::arg("alpha"),
        py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);
}
