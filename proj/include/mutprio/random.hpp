#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace mutprio {

struct RandomStep {
  std::uint64_t value;
  std::uint64_t state;
};

// One SplitMix64 step. This generator is the reproducibility contract for
// every seeded draw (tie-breaks, shuffles, GA operators).
constexpr RandomStep next_random(std::uint64_t state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return {z, state};
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    auto step = next_random(state_);
    state_ = step.state;
    return step.value;
  }
  std::uint64_t operator()() noexcept { return next(); }

  // value mod k; the modulo bias is negligible for k << 2^32.
  std::size_t uniform_index(std::size_t k) noexcept { return static_cast<std::size_t>(next() % k); }
  // Uniform real in [0, 1) from the top 53 bits.
  double uniform_real() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const noexcept { return state_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

 private:
  std::uint64_t state_;
};

// Stream seed for run `run` of technique `technique` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t technique, std::uint64_t run) noexcept;

// Fisher-Yates from the back: for i = n-1..1 swap(i, uniform_index(i+1)).
template <typename T>
void shuffle(std::span<T> items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.uniform_index(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace mutprio
