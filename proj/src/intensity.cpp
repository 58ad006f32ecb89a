#include "seiswait/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "seiswait/errors.hpp"

namespace seiswait {

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa, double b,
                        double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, simpson(a, fa, fm, b, fb), tol, 20);
}

double canonical_tail_start(const std::vector<RateSegment>& segments) {
  const double tail = segments.back().rate;
  std::size_t i = segments.size() - 1;
  while (i > 0 && segments[i - 1].rate == tail) {
    --i;
  }
  return segments[i].start;
}

void validate_segments(const std::vector<RateSegment>& segments) {
  if (segments.empty()) {
    throw std::invalid_argument("intensity model needs at least one segment");
  }
  if (segments.front().start != 0.0) {
    throw std::invalid_argument("first segment must start at 0");
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!std::isfinite(s.start) || !std::isfinite(s.rate)) {
      throw std::invalid_argument("segment values must be finite");
    }
    if (s.rate < 0.0) {
      throw std::invalid_argument("segment rates must be nonnegative");
    }
    if (i > 0 && !(s.start > segments[i - 1].start)) {
      throw std::invalid_argument("segment starts must be strictly increasing");
    }
  }
  if (!(segments.back().rate > 0.0)) {
    throw std::invalid_argument("tail rate must be strictly positive");
  }
}

}  // namespace

IntensityModel::IntensityModel(IntensityKind kind, std::vector<RateSegment> segments,
                               double tail_start)
    : kind_(kind), segments_(std::move(segments)), tail_start_(tail_start) {
  cumulative_at_start_.reserve(segments_.size());
  double acc = 0.0;
  cumulative_at_start_.push_back(0.0);
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    acc += segments_[i - 1].rate * (segments_[i].start - segments_[i - 1].start);
    cumulative_at_start_.push_back(acc);
  }
}

IntensityModel IntensityModel::constant(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("constant rate must be finite and strictly positive");
  }
  return IntensityModel(IntensityKind::constant, {{0.0, rate}}, 0.0);
}

IntensityModel IntensityModel::piecewise(std::vector<RateSegment> segments) {
  validate_segments(segments);
  const double tail_start = canonical_tail_start(segments);
  return IntensityModel(IntensityKind::piecewise_constant, std::move(segments), tail_start);
}

IntensityModel IntensityModel::piecewise(std::vector<RateSegment> segments, double tail_start) {
  validate_segments(segments);
  if (!(tail_start >= canonical_tail_start(segments)) || !std::isfinite(tail_start)) {
    throw std::invalid_argument("rate differs from the tail rate after tail_start");
  }
  return IntensityModel(IntensityKind::piecewise_constant, std::move(segments), tail_start);
}

IntensityModel IntensityModel::from_rate_function(const std::function<double(double)>& rate,
                                                  double tail_start, double tail_rate,
                                                  std::size_t cells) {
  if (!(tail_rate > 0.0) || !std::isfinite(tail_rate)) {
    throw std::invalid_argument("tail rate must be finite and strictly positive");
  }
  if (!(tail_start >= 0.0) || !std::isfinite(tail_start)) {
    throw std::invalid_argument("tail_start must be finite and nonnegative");
  }
  if (tail_start == 0.0) {
    return IntensityModel(IntensityKind::tabulated, {{0.0, tail_rate}}, 0.0);
  }
  if (cells == 0) {
    throw std::invalid_argument("need at least one tabulation cell");
  }
  std::vector<RateSegment> segments;
  segments.reserve(cells + 1);
  const double width = tail_start / static_cast<double>(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = width * static_cast<double>(i);
    const double b = i + 1 == cells ? tail_start : width * static_cast<double>(i + 1);
    const double mass = integrate(rate, a, b, 1e-12);
    if (mass < -1e-12) {
      throw std::invalid_argument("rate function must be nonnegative");
    }
    segments.push_back({a, std::max(0.0, mass) / (b - a)});
  }
  segments.push_back({tail_start, tail_rate});
  return IntensityModel(IntensityKind::tabulated, std::move(segments), tail_start);
}

std::size_t IntensityModel::segment_index(double t) const {
  const auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                                   [](double v, const RateSegment& s) { return v < s.start; });
  return static_cast<std::size_t>(it - segments_.begin()) - 1;
}

double IntensityModel::rate(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("intensity is defined for t >= 0");
  }
  return segments_[segment_index(t)].rate;
}

double IntensityModel::cumulative(double t) const {
  if (!(t >= 0.0)) {
    throw std::domain_error("cumulative intensity is defined for t >= 0");
  }
  const std::size_t i = segment_index(t);
  return cumulative_at_start_[i] + segments_[i].rate * (t - segments_[i].start);
}

double IntensityModel::inverse_cumulative(double y) const {
  if (!(y >= 0.0)) {
    throw std::domain_error("inverse cumulative intensity needs y >= 0");
  }
  if (y == 0.0) {
    return 0.0;
  }
  // Last segment whose starting cumulative value is strictly below y; its rate
  // is positive because Lambda rises from below y to at least y across it.
  const auto it = std::lower_bound(cumulative_at_start_.begin(), cumulative_at_start_.end(), y);
  const std::size_t i = static_cast<std::size_t>(it - cumulative_at_start_.begin()) - 1;
  double t = segments_[i].start + (y - cumulative_at_start_[i]) / segments_[i].rate;
  if (i + 1 < segments_.size()) {
    t = std::min(t, segments_[i + 1].start);
  }
  return t;
}

double IntensityModel::max_tail_deviation() const noexcept {
  double worst = 0.0;
  const double m = tail_rate();
  for (const auto& s : segments_) {
    if (s.start < tail_start_) {
      worst = std::max(worst, std::abs(s.rate - m));
    }
  }
  return worst;
}

IntensityModel IntensityModel::with_tail_rate(double tail_rate) const {
  if (!(tail_rate > 0.0) || !std::isfinite(tail_rate)) {
    throw std::invalid_argument("tail rate must be finite and strictly positive");
  }
  std::vector<RateSegment> segments;
  for (const auto& s : segments_) {
    if (s.start < tail_start_) {
      segments.push_back(s);
    }
  }
  segments.push_back({tail_start_, tail_rate});
  return IntensityModel(kind_, std::move(segments), tail_start_);
}

IntensityModel parse_model_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("model spec is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("segments") || !doc.contains("tail_start") ||
        !doc.contains("tail_rate")) {
      throw InputError("model spec needs segments, tail_start and tail_rate");
    }
    std::vector<RateSegment> segments;
    for (const auto& entry : doc.at("segments")) {
      if (!entry.is_array() || entry.size() != 2) {
        throw InputError("each segment must be a [start, rate] pair");
      }
      segments.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    const double tail_start = doc.at("tail_start").get<double>();
    const double tail_rate = doc.at("tail_rate").get<double>();
    if (segments.empty()) {
      throw InputError("model spec has no segments");
    }
    if (segments.back().rate != tail_rate) {
      throw InputError("last segment rate must equal tail_rate");
    }
    const bool all_equal = std::all_of(segments.begin(), segments.end(),
                                       [&](const RateSegment& s) { return s.rate == tail_rate; });
    if (all_equal && segments.size() == 1 && tail_start == 0.0) {
      return IntensityModel::constant(tail_rate);
    }
    return IntensityModel::piecewise(std::move(segments), tail_start);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("model spec has a field of the wrong type: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid model: ") + e.what());
  }
}

std::string to_model_spec(const IntensityModel& model) {
  nlohmann::json doc;
  doc["segments"] = nlohmann::json::array();
  for (const auto& s : model.segments()) {
    doc["segments"].push_back({s.start, s.rate});
  }
  doc["tail_start"] = model.tail_start();
  doc["tail_rate"] = model.tail_rate();
  return doc.dump();
}

}  // namespace seiswait
