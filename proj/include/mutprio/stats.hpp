#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mutprio {

struct SampleSet {
  std::vector<double> values;
  std::string label;
};

struct MannWhitneyResult {
  double u = 0.0;  // pairs with a > b, ties counted half
  double p = 1.0;  // two-sided
};

enum class Outcome { Superior, Equal, Inferior };

std::string_view to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::Equal;
  double p_value = 1.0;
  double a12 = 0.5;
};

inline constexpr double kDefaultAlpha = 0.001;

// Normal approximation with tie-corrected variance and a 0.5 continuity
// correction; p is clipped to 1. Zero pooled variance gives p = 1.
MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b);

// Vargha-Delaney effect size: P(a > b) + 0.5 P(a = b).
double a12(const SampleSet& a, const SampleSet& b);

// std::nullopt when either input has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties receive the mean of the ranks they span.
std::vector<double> mid_ranks(std::span<const double> values);

Verdict compare(const SampleSet& a, const SampleSet& b, double alpha = kDefaultAlpha);

}  // namespace mutprio
