#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace seiswait {

enum class IntensityKind { constant, piecewise_constant, tabulated };

// Rate `rate` holds on [start, next segment's start); the last segment extends
// to infinity.
struct RateSegment {
  double start;
  double rate;
};

// Intensity function lambda(t) with an eventually-constant tail.
//
// Every model is stored as a right-continuous piecewise-constant rate, with
// per-breakpoint cumulative sums cached, so the cumulative intensity and its
// inverse are closed-form segment sums. General rate functions enter through
// from_rate_function(), which tabulates cell averages over [0, tail_start].
//
// Instances are immutable and safe to share between threads.
class IntensityModel {
 public:
  static IntensityModel constant(double rate);

  // Segments must start at 0 with strictly increasing starts and nonnegative
  // rates; the last rate is the tail rate and must be positive. tail_start
  // defaults to the start of the trailing run of segments at the tail rate.
  static IntensityModel piecewise(std::vector<RateSegment> segments);
  static IntensityModel piecewise(std::vector<RateSegment> segments, double tail_start);

  // Tabulates a general nonnegative rate on [0, tail_start] into `cells` equal
  // cells whose rates are the cell averages (adaptive Simpson, 1e-12 per cell),
  // followed by the constant tail. Cumulative intensity is exact at cell edges.
  static IntensityModel from_rate_function(const std::function<double(double)>& rate,
                                           double tail_start, double tail_rate,
                                           std::size_t cells = 256);

  [[nodiscard]] IntensityKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<RateSegment>& segments() const noexcept { return segments_; }
  [[nodiscard]] double tail_start() const noexcept { return tail_start_; }
  [[nodiscard]] double tail_rate() const noexcept { return segments_.back().rate; }

  // lambda(t); t < 0 is a domain error.
  [[nodiscard]] double rate(double t) const;

  // Lambda(t) = integral of lambda over [0, t].
  [[nodiscard]] double cumulative(double t) const;

  // Smallest t with Lambda(t) >= y.
  [[nodiscard]] double inverse_cumulative(double y) const;

  // lim Lambda(t)/t, which equals the tail rate.
  [[nodiscard]] double asymptotic_slope() const noexcept { return tail_rate(); }

  // sup |lambda - m| over [0, tail_start].
  [[nodiscard]] double max_tail_deviation() const noexcept;

  // Same rate on [0, tail_start), tail replaced by `tail_rate`.
  [[nodiscard]] IntensityModel with_tail_rate(double tail_rate) const;

 private:
  IntensityModel(IntensityKind kind, std::vector<RateSegment> segments, double tail_start);

  [[nodiscard]] std::size_t segment_index(double t) const;

  IntensityKind kind_;
  std::vector<RateSegment> segments_;
  std::vector<double> cumulative_at_start_;
  double tail_start_;
};

// Parses `{"segments":[[t0,r0],[t1,r1],...],"tail_start":x,"tail_rate":m}`.
// Throws InputError on malformed text or inconsistent fields.
[[nodiscard]] IntensityModel parse_model_spec(std::string_view text);

[[nodiscard]] std::string to_model_spec(const IntensityModel& model);

}  // namespace seiswait
