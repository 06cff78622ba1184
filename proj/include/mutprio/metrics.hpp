#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mutprio/model.hpp"

namespace mutprio {

// values[i-1] = fraction of the target reached after the first i tests.
struct PrefixCurve {
  std::vector<double> values;
};

enum class Metric { Apfd, ApfdC, Apmk, Apmd };

std::string_view to_string(Metric metric);
// Accepts "apfd", "apfdc", "apmk", "apmd" (case-insensitive).
Metric parse_metric(std::string_view name);

struct MetricValue {
  Metric metric = Metric::Apfd;
  double value = 0.0;
  Provenance provenance;
};

enum class FaultMode {
  Strict,   // undetected faults are errors
  Lenient,  // undetected faults are dropped from the denominator
};

// Area under a prefix curve: mean of the values minus 1/(2n).
double apxx(const PrefixCurve& curve);

PrefixCurve pfd_curve(const Ordering& ordering, const FaultMatrix& faults, FaultMode mode = FaultMode::Strict,
                      std::vector<std::string>* dropped = nullptr);
MetricValue apfd(const Ordering& ordering, const FaultMatrix& faults, FaultMode mode = FaultMode::Strict);

// Position form: 1 - sum(TF)/(n*m) + 1/(2n), positions 1-based.
double apfd_by_positions(std::span<const std::size_t> first_positions, std::size_t n);

// 1-based rank of the first test in `ordering` detecting each fault.
// Undetected faults are reported as std::nullopt.
std::vector<std::optional<std::size_t>> first_detection_positions(const Ordering& ordering, const FaultMatrix& faults);

MetricValue apfd_c(const Ordering& ordering, const FaultMatrix& faults, const CostVector& costs,
                   FaultMode mode = FaultMode::Strict);

PrefixCurve pmk_curve(const Ordering& ordering, const KillMatrix& kill);
PrefixCurve pmd_curve(const Ordering& ordering, const KillMatrix& kill);
MetricValue apmk(const Ordering& ordering, const KillMatrix& kill);
MetricValue apmd(const Ordering& ordering, const KillMatrix& kill);

struct MutationScores {
  double apmk = 0.0;
  double apmd = 0.0;
};

// Both mutation metrics in a single pass over the ordering.
MutationScores mutation_scores(const Ordering& ordering, const KillMatrix& kill);

}  // namespace mutprio
