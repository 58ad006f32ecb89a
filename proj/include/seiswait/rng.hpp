#pragma once

#include <cstdint>
#include <random>

namespace seiswait {

// Seedable generator used by every stochastic routine in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniform and exponential variates are derived from raw engine
// output with in-house transforms, so streams are reproducible across
// standard library implementations.
//
// Substreams: replicate i of a run seeded with `master` uses
// Rng(derive_seed(master, i)). Results therefore never depend on how
// replicates are scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();

  // Unit-rate exponential variate.
  double exponential();

  // Poisson variate. Inversion for small means, PTRS transformed rejection
  // (Hormann 1993) for mean >= 10.
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer applied to (master, index). Distinct indices give
// statistically independent child seeds.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

}  // namespace seiswait
