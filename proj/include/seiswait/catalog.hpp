#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seiswait {

struct CatalogEvent {
  int year;
  double magnitude;
};

// Moderate events following one major event, timed in whole years since it.
struct CatalogSegment {
  int anchor_year;
  double anchor_magnitude;
  std::vector<int> relative_times;  // nondecreasing; ties for same-year events
  std::vector<double> magnitudes;
  bool closed = false;                // a later major event ends the segment
  std::optional<int> closing_time;    // relative time of that major event
};

struct Segmentation {
  std::vector<CatalogSegment> segments;
  std::vector<CatalogEvent> unassigned;  // before the first major event or below the minimum
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultMajorThreshold = 8.5;
inline constexpr double kDefaultMinimumMagnitude = 7.0;
// Segments with fewer moderate events are reported but flagged as too short
// to estimate a slope from.
inline constexpr std::size_t kMinSegmentEvents = 3;

// CSV with header `year,magnitude`. Rows must be nondecreasing in year.
// Throws InputError naming the offending line.
[[nodiscard]] std::vector<CatalogEvent> parse_catalog(std::istream& in);
[[nodiscard]] std::vector<CatalogEvent> parse_catalog_text(std::string_view text);

// The 39-event Area A (northern Chile) catalog, 1604-2007, shipped with the library.
[[nodiscard]] std::string_view reference_catalog_csv();
[[nodiscard]] std::vector<CatalogEvent> reference_catalog();

// Each event with magnitude >= major_threshold opens a segment; later events
// with min_magnitude <= magnitude < major_threshold join it.
[[nodiscard]] Segmentation segment_by_major(std::span<const CatalogEvent> events,
                                            double major_threshold = kDefaultMajorThreshold,
                                            double min_magnitude = kDefaultMinimumMagnitude);

// m_hat_t = N_t / t as an exact fraction. The anchor row is (0, 0/1).
struct SlopePoint {
  int t;
  std::int64_t numerator;
  std::int64_t denominator;
  double m_hat;
};

[[nodiscard]] std::vector<SlopePoint> slope_series(const CatalogSegment& segment);

// N_t / t for the segment (0 when t = 0).
[[nodiscard]] SlopePoint slope_at(const CatalogSegment& segment, int t);

// Right-continuous step function F(h) = #{events in (t, t+h]} / #{events > t}.
class WaitingStepCdf {
 public:
  WaitingStepCdf(std::vector<double> jumps, std::vector<double> levels, std::size_t total);

  [[nodiscard]] double operator()(double h) const;
  [[nodiscard]] const std::vector<double>& jumps() const noexcept { return jumps_; }
  [[nodiscard]] const std::vector<double>& levels() const noexcept { return levels_; }
  [[nodiscard]] std::size_t total() const noexcept { return total_; }

 private:
  std::vector<double> jumps_;
  std::vector<double> levels_;
  std::size_t total_;
};

// `t` must be one of the segment's event times (or 0). With include_closing,
// the major event that closes the segment counts as a further occurrence.
[[nodiscard]] WaitingStepCdf empirical_waiting_cdf(const CatalogSegment& segment, int t,
                                                   bool include_closing = false);

struct CdfComparisonRow {
  double h;
  double empirical;
  double estimated;
  double abs_difference;
};

struct CdfComparison {
  int t;
  SlopePoint slope;
  std::vector<CdfComparisonRow> rows;
};

// Rows at each jump of the empirical CDF; the estimate is 1 - exp(-m_hat_t h).
[[nodiscard]] CdfComparison compare_cdfs(const CatalogSegment& segment, int t,
                                         bool include_closing = false);

// Previously published estimated-CDF values for the second Area A segment,
// kept to audit them against 1 - exp(-m_hat_t h).
struct ReferenceCdfRow {
  int t;
  std::vector<double> h;
  std::vector<double> estimated;
};

[[nodiscard]] const std::vector<ReferenceCdfRow>& reference_cdf_rows();
[[nodiscard]] const ReferenceCdfRow* find_reference_cdf_row(int t);

struct CdfAuditEntry {
  double h;
  double published;
  double recomputed;
  double deviation;
};

struct CdfAudit {
  int t;
  double tolerance;
  bool reproducible;
  double max_deviation;
  std::vector<CdfAuditEntry> entries;
  std::string note;
};

[[nodiscard]] CdfAudit audit_reference_row(const CatalogSegment& segment,
                                           const ReferenceCdfRow& row,
                                           double tolerance = 0.005);

// {"segments":[{"anchor_year":..,"rows":[{"t":..,"m_hat_num":..,"m_hat_den":..}]}]}
[[nodiscard]] std::string slope_series_json(const Segmentation& segmentation);

// Header `h,empirical,estimated,abs_difference`.
void write_comparison_csv(std::ostream& out, const CdfComparison& comparison);

}  // namespace seiswait
