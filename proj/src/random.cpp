#include "mutprio/random.hpp"

namespace mutprio {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t technique, std::uint64_t run) noexcept {
  std::uint64_t s = next_random(base).value;
  s = next_random(s ^ technique).value;
  return next_random(s ^ run).value;
}

}  // namespace mutprio
