#include "seiswait/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "seiswait/errors.hpp"
#include "seiswait/format.hpp"
#include "seiswait/inference.hpp"

namespace seiswait {

namespace detail {
extern const char* const kReferenceCatalogCsv;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::size_t count_after(const CatalogSegment& segment, int t) {
  return static_cast<std::size_t>(
      segment.relative_times.end() -
      std::upper_bound(segment.relative_times.begin(), segment.relative_times.end(), t));
}

bool is_event_time(const CatalogSegment& segment, int t) {
  return t == 0 ||
         std::binary_search(segment.relative_times.begin(), segment.relative_times.end(), t);
}

}  // namespace

std::vector<CatalogEvent> parse_catalog(std::istream& in) {
  std::vector<CatalogEvent> events;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (!have_header) {
      if (comma == std::string::npos || trim(line.substr(0, comma)) != "year" ||
          trim(line.substr(comma + 1)) != "magnitude") {
        throw InputError("expected header 'year,magnitude'", line_no);
      }
      have_header = true;
      continue;
    }
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError("expected two columns 'year,magnitude'", line_no);
    }
    const std::string year_text = trim(line.substr(0, comma));
    const std::string mag_text = trim(line.substr(comma + 1));
    CatalogEvent ev{};
    try {
      std::size_t used = 0;
      ev.year = std::stoi(year_text, &used);
      if (used != year_text.size()) {
        throw std::invalid_argument("trailing");
      }
      ev.magnitude = std::stod(mag_text, &used);
      if (used != mag_text.size()) {
        throw std::invalid_argument("trailing");
      }
    } catch (const std::exception&) {
      throw InputError("non-numeric year or magnitude: '" + line + "'", line_no);
    }
    if (!(ev.magnitude >= 0.0) || !std::isfinite(ev.magnitude)) {
      throw InputError("magnitude must be finite and nonnegative", line_no);
    }
    if (!events.empty() && ev.year < events.back().year) {
      throw InputError("years must be nondecreasing", line_no);
    }
    events.push_back(ev);
  }
  if (!have_header) {
    throw InputError("missing header 'year,magnitude'");
  }
  return events;
}

std::vector<CatalogEvent> parse_catalog_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_catalog(in);
}

std::string_view reference_catalog_csv() { return detail::kReferenceCatalogCsv; }

std::vector<CatalogEvent> reference_catalog() { return parse_catalog_text(reference_catalog_csv()); }

Segmentation segment_by_major(std::span<const CatalogEvent> events, double major_threshold,
                              double min_magnitude) {
  if (!(major_threshold > 0.0)) {
    throw std::domain_error("major threshold must be positive");
  }
  Segmentation out;
  for (const auto& ev : events) {
    if (ev.magnitude >= major_threshold) {
      if (!out.segments.empty()) {
        auto& prev = out.segments.back();
        prev.closed = true;
        prev.closing_time = ev.year - prev.anchor_year;
      }
      out.segments.push_back({ev.year, ev.magnitude, {}, {}, false, std::nullopt});
      continue;
    }
    if (ev.magnitude < min_magnitude || out.segments.empty()) {
      out.unassigned.push_back(ev);
      continue;
    }
    auto& seg = out.segments.back();
    seg.relative_times.push_back(ev.year - seg.anchor_year);
    seg.magnitudes.push_back(ev.magnitude);
  }
  if (out.segments.empty()) {
    out.warnings.push_back("no event reaches the major threshold " +
                           format_sig(major_threshold, 6) + "; no segments formed");
  }
  std::size_t before_first = 0;
  std::size_t below_min = 0;
  for (const auto& ev : out.unassigned) {
    (ev.magnitude < min_magnitude ? below_min : before_first) += 1;
  }
  if (before_first > 0 && !out.segments.empty()) {
    out.warnings.push_back(std::to_string(before_first) +
                           " event(s) precede the first major event and were not assigned");
  }
  if (below_min > 0) {
    out.warnings.push_back(std::to_string(below_min) + " event(s) below magnitude " +
                           format_sig(min_magnitude, 6) + " were ignored");
  }
  for (std::size_t i = 0; i < out.segments.size(); ++i) {
    if (out.segments[i].relative_times.size() < kMinSegmentEvents) {
      out.warnings.push_back("segment " + std::to_string(i + 1) + " (anchor " +
                             std::to_string(out.segments[i].anchor_year) +
                             ") has insufficient data");
    }
  }
  return out;
}

std::vector<SlopePoint> slope_series(const CatalogSegment& segment) {
  std::vector<SlopePoint> series;
  series.reserve(segment.relative_times.size() + 1);
  series.push_back({0, 0, 1, 0.0});
  std::int64_t index = 0;
  for (int t : segment.relative_times) {
    ++index;
    if (t <= 0) {
      throw ConventionError("event at relative time " + std::to_string(t) +
                            " after the anchor in " + std::to_string(segment.anchor_year) +
                            "; the slope i/t is undefined");
    }
    series.push_back({t, index, t, static_cast<double>(index) / t});
  }
  return series;
}

SlopePoint slope_at(const CatalogSegment& segment, int t) {
  if (t < 0) {
    throw std::domain_error("relative time must be nonnegative");
  }
  if (t == 0) {
    return {0, 0, 1, 0.0};
  }
  const auto n = static_cast<std::int64_t>(
      std::upper_bound(segment.relative_times.begin(), segment.relative_times.end(), t) -
      segment.relative_times.begin());
  return {t, n, t, static_cast<double>(n) / t};
}

WaitingStepCdf::WaitingStepCdf(std::vector<double> jumps, std::vector<double> levels,
                               std::size_t total)
    : jumps_(std::move(jumps)), levels_(std::move(levels)), total_(total) {}

double WaitingStepCdf::operator()(double h) const {
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), h);
  if (it == jumps_.begin()) {
    return 0.0;
  }
  return levels_[static_cast<std::size_t>(it - jumps_.begin()) - 1];
}

WaitingStepCdf empirical_waiting_cdf(const CatalogSegment& segment, int t, bool include_closing) {
  if (!is_event_time(segment, t)) {
    throw std::domain_error("t = " + std::to_string(t) + " is not an event time of the segment");
  }
  std::vector<int> later(segment.relative_times.end() - static_cast<std::ptrdiff_t>(count_after(segment, t)),
                         segment.relative_times.end());
  if (include_closing && segment.closing_time && *segment.closing_time > t) {
    later.push_back(*segment.closing_time);
  }
  if (later.empty()) {
    throw std::domain_error("no events after t = " + std::to_string(t));
  }
  const double total = static_cast<double>(later.size());
  std::vector<double> jumps;
  std::vector<double> levels;
  for (std::size_t i = 0; i < later.size(); ++i) {
    const double h = later[i] - t;
    const double level = static_cast<double>(i + 1) / total;
    if (!jumps.empty() && jumps.back() == h) {
      levels.back() = level;
    } else {
      jumps.push_back(h);
      levels.push_back(level);
    }
  }
  return {std::move(jumps), std::move(levels), later.size()};
}

CdfComparison compare_cdfs(const CatalogSegment& segment, int t, bool include_closing) {
  const WaitingStepCdf empirical = empirical_waiting_cdf(segment, t, include_closing);
  CdfComparison out{t, slope_at(segment, t), {}};
  for (std::size_t i = 0; i < empirical.jumps().size(); ++i) {
    const double h = empirical.jumps()[i];
    const double f = empirical.levels()[i];
    const double g = random_cdf(out.slope.m_hat, h);
    out.rows.push_back({h, f, g, std::abs(g - f)});
  }
  return out;
}

const std::vector<ReferenceCdfRow>& reference_cdf_rows() {
  static const std::vector<ReferenceCdfRow> rows = {
      {53,
       {63, 65, 68, 100, 102, 103, 108, 109},
       {0.70, 0.71, 0.72, 0.85, 0.86, 0.86, 0.87, 0.88}},
      {116, {2, 5, 37, 39, 40, 45, 46}, {0.66, 0.67, 0.69, 0.82, 0.83, 0.83, 0.84}},
      {118, {3, 35, 37, 38, 43, 44}, {0.80, 0.81, 0.82, 0.92, 0.93, 0.93}},
      {121, {32, 34, 35, 40, 41}, {0.88, 0.88, 0.89, 0.96, 0.97}},
  };
  return rows;
}

const ReferenceCdfRow* find_reference_cdf_row(int t) {
  for (const auto& row : reference_cdf_rows()) {
    if (row.t == t) {
      return &row;
    }
  }
  return nullptr;
}

CdfAudit audit_reference_row(const CatalogSegment& segment, const ReferenceCdfRow& row,
                             double tolerance) {
  const SlopePoint slope = slope_at(segment, row.t);
  CdfAudit audit{row.t, tolerance, true, 0.0, {}, {}};
  std::size_t failures = 0;
  for (std::size_t i = 0; i < row.h.size(); ++i) {
    const double g = random_cdf(slope.m_hat, row.h[i]);
    const double dev = std::abs(g - row.estimated[i]);
    audit.entries.push_back({row.h[i], row.estimated[i], g, dev});
    audit.max_deviation = std::max(audit.max_deviation, dev);
    if (dev > tolerance) {
      ++failures;
    }
  }
  audit.reproducible = failures == 0;
  std::ostringstream note;
  note << "t=" << row.t << ": m_hat=" << slope.numerator << "/" << slope.denominator << ", ";
  if (audit.reproducible) {
    note << "all " << row.h.size() << " published values match 1-exp(-m_hat h) within "
         << format_sig(tolerance, 3);
  } else {
    note << failures << " of " << row.h.size()
         << " published values differ from 1-exp(-m_hat h) by more than "
         << format_sig(tolerance, 3) << " (max " << format_sig(audit.max_deviation, 3)
         << "); published row is not reproducible from the stated formula";
  }
  audit.note = note.str();
  return audit;
}

std::string slope_series_json(const Segmentation& segmentation) {
  nlohmann::json doc;
  doc["segments"] = nlohmann::json::array();
  for (const auto& seg : segmentation.segments) {
    nlohmann::json s;
    s["anchor_year"] = seg.anchor_year;
    s["anchor_magnitude"] = round_sig(seg.anchor_magnitude);
    s["closed"] = seg.closed;
    if (seg.closing_time) {
      s["closing_time"] = *seg.closing_time;
    }
    s["insufficient_data"] = seg.relative_times.size() < kMinSegmentEvents;
    s["rows"] = nlohmann::json::array();
    for (const auto& p : slope_series(seg)) {
      s["rows"].push_back({{"t", p.t},
                           {"m_hat_num", p.numerator},
                           {"m_hat_den", p.denominator},
                           {"m_hat", round_sig(p.m_hat)}});
    }
    doc["segments"].push_back(s);
  }
  doc["warnings"] = segmentation.warnings;
  return doc.dump(2);
}

void write_comparison_csv(std::ostream& out, const CdfComparison& comparison) {
  out << "h,empirical,estimated,abs_difference\n";
  for (const auto& r : comparison.rows) {
    out << format_sig(r.h) << ',' << format_sig(r.empirical) << ',' << format_sig(r.estimated)
        << ',' << format_sig(r.abs_difference) << '\n';
  }
}

}  // namespace seiswait
