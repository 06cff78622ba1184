#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mutprio/model.hpp"

namespace mutprio {

enum class Technique { Rnd, Scv, Grk, Grd, Hyb, Mok, Mod };

std::string_view to_string(Technique technique);
// Case-insensitive mnemonic: rnd, scv, grk, grd, hyb, mok, mod.
Technique parse_technique(std::string_view name);
bool is_greedy(Technique technique) noexcept;

struct GreedyConfig {
  Technique technique = Technique::Grk;
  std::optional<double> weight;  // HYB only, in [0, 1]
  std::uint64_t seed = 0;

  // Throws InvalidArgument when the weight/technique pairing is invalid.
  void validate() const;
  // "GRK", "HYB-0.5", ...
  std::string label() const;
};

// Mutants killed by `candidate` and by no test in `selected`.
std::size_t additional_gain_kill(const KillMatrix& kill, std::span<const std::size_t> selected, std::size_t candidate);

// Increase in singleton classes of M' when `candidate` is appended to `selected`.
std::size_t additional_gain_distinguish(const KillMatrix& kill, std::span<const std::size_t> selected,
                                        std::size_t candidate);

// Additional-greedy prioritization. Each step picks uniformly (one PRNG draw)
// among the remaining tests with maximal gain, listed in canonical order. When
// every remaining test has zero gain against a non-empty baseline, the
// baseline is cleared and gains are recomputed from scratch.
//
// RND ignores both matrices' contents and shuffles; SCV needs `coverage`.
Ordering prioritize_greedy(const KillMatrix& kill, const CoverageMatrix* coverage, const GreedyConfig& config);

}  // namespace mutprio
