#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "seiswait/intensity.hpp"
#include "seiswait/rng.hpp"

namespace seiswait {

// A realized NHPP path: strictly increasing occurrence times in (0, horizon].
class EventTimes {
 public:
  EventTimes() = default;
  // Throws std::invalid_argument unless 0 < times[0] < ... <= horizon.
  EventTimes(std::vector<double> times, double horizon);

  [[nodiscard]] const std::vector<double>& times() const noexcept { return times_; }
  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
  [[nodiscard]] bool empty() const noexcept { return times_.empty(); }

  // N_t: number of events in (0, t].
  [[nodiscard]] std::size_t count_until(double t) const;
  // N_b - N_a: number of events in (a, b].
  [[nodiscard]] std::size_t count_between(double a, double b) const;

 private:
  std::vector<double> times_;
  double horizon_ = 0.0;
};

// Time transformation: unit-rate arrivals S_1 < S_2 < ... are mapped through
// the inverse cumulative intensity and kept while <= horizon.
[[nodiscard]] EventTimes simulate_path(const IntensityModel& model, double horizon, Rng& rng);
[[nodiscard]] EventTimes simulate_path(const IntensityModel& model, double horizon,
                                       std::uint64_t seed);

// N_b - N_a drawn directly as Poisson(Lambda(b) - Lambda(a)); same law as
// counting a simulated path, without materializing it.
[[nodiscard]] std::uint64_t simulate_count(const IntensityModel& model, double a, double b,
                                           Rng& rng);

// Density of the k-th jump time,
//   f_k(t) = lambda(t) Lambda(t)^(k-1) exp(-Lambda(t)) / (k-1)!,  t >= 0,
// and 0 for t < 0. Evaluated in log space.
[[nodiscard]] double jump_time_pdf(const IntensityModel& model, int k, double t);

// T_k = Lambda^{-1}(E_1 + ... + E_k) with unit exponentials E_i.
[[nodiscard]] double sample_jump_time(const IntensityModel& model, int k, Rng& rng);
[[nodiscard]] double sample_jump_time(const IntensityModel& model, int k, std::uint64_t seed);

// Header `time`, one event per row, 12 significant digits.
void write_events_csv(std::ostream& out, const EventTimes& events);

}  // namespace seiswait
