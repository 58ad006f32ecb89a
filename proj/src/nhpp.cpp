#include "seiswait/nhpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "seiswait/format.hpp"

namespace seiswait {

namespace {

double log_factorial(int n) {
  if (n <= 20) {
    double acc = 1.0;
    for (int i = 2; i <= n; ++i) {
      acc *= i;
    }
    return std::log(acc);
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace

EventTimes::EventTimes(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
  if (!(horizon_ >= 0.0)) {
    throw std::invalid_argument("horizon must be nonnegative");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    const double lower = i == 0 ? 0.0 : times_[i - 1];
    if (!(times_[i] > lower)) {
      throw std::invalid_argument("event times must be positive and strictly increasing");
    }
  }
  if (!times_.empty() && times_.back() > horizon_) {
    throw std::invalid_argument("event time beyond the observation horizon");
  }
}

std::size_t EventTimes::count_until(double t) const {
  return static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) -
                                  times_.begin());
}

std::size_t EventTimes::count_between(double a, double b) const {
  if (b <= a) {
    return 0;
  }
  return count_until(b) - count_until(a);
}

EventTimes simulate_path(const IntensityModel& model, double horizon, Rng& rng) {
  if (!(horizon >= 0.0)) {
    throw std::domain_error("horizon must be nonnegative");
  }
  std::vector<double> times;
  const double total = model.cumulative(horizon);
  times.reserve(static_cast<std::size_t>(total + 4.0 * std::sqrt(total) + 8.0));
  double arrival = 0.0;
  for (;;) {
    arrival += rng.exponential();
    if (arrival > total) {
      break;
    }
    const double t = model.inverse_cumulative(arrival);
    if (t > horizon) {
      break;
    }
    // Rounding in the inverse can produce a tie when two arrivals are within
    // an ulp; the later one is dropped to keep the path strictly increasing.
    if (!times.empty() && !(t > times.back())) {
      continue;
    }
    if (t > 0.0) {
      times.push_back(t);
    }
  }
  return EventTimes(std::move(times), horizon);
}

EventTimes simulate_path(const IntensityModel& model, double horizon, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_path(model, horizon, rng);
}

std::uint64_t simulate_count(const IntensityModel& model, double a, double b, Rng& rng) {
  if (!(a >= 0.0) || !(b >= a)) {
    throw std::domain_error("count window needs 0 <= a <= b");
  }
  return rng.poisson(model.cumulative(b) - model.cumulative(a));
}

double jump_time_pdf(const IntensityModel& model, int k, double t) {
  if (k < 1) {
    throw std::domain_error("jump index k must be >= 1");
  }
  if (t < 0.0) {
    return 0.0;
  }
  const double rate = model.rate(t);
  const double cum = model.cumulative(t);
  if (rate == 0.0) {
    return 0.0;
  }
  if (cum == 0.0) {
    return k == 1 ? rate : 0.0;
  }
  const double log_density =
      std::log(rate) + (k - 1) * std::log(cum) - cum - log_factorial(k - 1);
  return std::exp(log_density);
}

double sample_jump_time(const IntensityModel& model, int k, Rng& rng) {
  if (k < 1) {
    throw std::domain_error("jump index k must be >= 1");
  }
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    sum += rng.exponential();
  }
  return model.inverse_cumulative(sum);
}

double sample_jump_time(const IntensityModel& model, int k, std::uint64_t seed) {
  Rng rng(seed);
  return sample_jump_time(model, k, rng);
}

void write_events_csv(std::ostream& out, const EventTimes& events) {
  out << "time\n";
  for (double t : events.times()) {
    out << format_sig(t, 12) << '\n';
  }
}

}  // namespace seiswait
