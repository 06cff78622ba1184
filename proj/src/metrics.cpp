#include "mutprio/metrics.hpp"

#include <algorithm>
#include <cctype>

#include "mutprio/adequacy.hpp"

namespace mutprio {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Apfd: return "apfd";
    case Metric::ApfdC: return "apfdc";
    case Metric::Apmk: return "apmk";
    case Metric::Apmd: return "apmd";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "apfd") return Metric::Apfd;
  if (lower == "apfdc" || lower == "apfd_c") return Metric::ApfdC;
  if (lower == "apmk") return Metric::Apmk;
  if (lower == "apmd") return Metric::Apmd;
  throw Error(ErrorKind::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

double apxx(const PrefixCurve& curve) {
  if (curve.values.empty()) throw Error(ErrorKind::InvalidArgument, "empty prefix curve");
  const double n = static_cast<double>(curve.values.size());
  double sum = 0.0;
  for (double v : curve.values) sum += v;
  return sum / n - 1.0 / (2.0 * n);
}

std::vector<std::optional<std::size_t>> first_detection_positions(const Ordering& ordering, const FaultMatrix& faults) {
  ordering.validate(faults.num_tests());
  std::vector<std::optional<std::size_t>> positions(faults.num_faults());
  for (std::size_t k = 0; k < ordering.size(); ++k) {
    const auto& row = faults.row(ordering.sequence[k]);
    for (auto f : row.indices())
      if (!positions[f]) positions[f] = k + 1;
  }
  return positions;
}

namespace {

// Positions of the faults that count under `mode`.
std::vector<std::size_t> counted_positions(const Ordering& ordering, const FaultMatrix& faults, FaultMode mode,
                                           std::vector<std::string>* dropped) {
  auto positions = first_detection_positions(ordering, faults);
  std::vector<std::size_t> counted;
  for (std::size_t f = 0; f < positions.size(); ++f) {
    if (positions[f]) {
      counted.push_back(*positions[f]);
    } else if (mode == FaultMode::Strict) {
      throw Error(ErrorKind::UndetectedFault, "fault '" + faults.columns()[f].name + "' is detected by no test");
    } else if (dropped) {
      dropped->push_back(faults.columns()[f].name);
    }
  }
  if (counted.empty()) throw Error(ErrorKind::DegenerateDenominator, "no detected faults");
  return counted;
}

}  // namespace

PrefixCurve pfd_curve(const Ordering& ordering, const FaultMatrix& faults, FaultMode mode, std::vector<std::string>* dropped) {
  auto positions = counted_positions(ordering, faults, mode, dropped);
  const std::size_t n = ordering.size();
  std::vector<std::size_t> newly(n + 1, 0);
  for (auto p : positions) ++newly[p];
  PrefixCurve curve;
  curve.values.reserve(n);
  std::size_t detected = 0;
  const double m = static_cast<double>(positions.size());
  for (std::size_t i = 1; i <= n; ++i) {
    detected += newly[i];
    curve.values.push_back(static_cast<double>(detected) / m);
  }
  return curve;
}

MetricValue apfd(const Ordering& ordering, const FaultMatrix& faults, FaultMode mode) {
  return {Metric::Apfd, apxx(pfd_curve(ordering, faults, mode)), ordering.provenance};
}

double apfd_by_positions(std::span<const std::size_t> first_positions, std::size_t n) {
  if (first_positions.empty()) throw Error(ErrorKind::InvalidArgument, "empty fault set");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "empty test suite");
  double sum = 0.0;
  for (auto p : first_positions) {
    if (p < 1 || p > n) throw Error(ErrorKind::OutOfRange, "fault position " + std::to_string(p) + " outside 1.." + std::to_string(n));
    sum += static_cast<double>(p);
  }
  const double nn = static_cast<double>(n);
  return 1.0 - sum / (nn * static_cast<double>(first_positions.size())) + 1.0 / (2.0 * nn);
}

MetricValue apfd_c(const Ordering& ordering, const FaultMatrix& faults, const CostVector& costs, FaultMode mode) {
  if (costs.size() != faults.num_tests()) throw Error(ErrorKind::TestSetMismatch, "cost vector does not cover every test");
  for (double c : costs.cost)
    if (!(c > 0.0)) throw Error(ErrorKind::InvalidArgument, "test costs must be positive");
  auto positions = counted_positions(ordering, faults, mode, nullptr);

  const std::size_t n = ordering.size();
  // suffix[i] = sum of costs at ranks i..n (1-based).
  std::vector<double> suffix(n + 2, 0.0);
  for (std::size_t i = n; i >= 1; --i) suffix[i] = suffix[i + 1] + costs.cost[ordering.sequence[i - 1]];
  double numerator = 0.0;
  for (auto p : positions) numerator += suffix[p] - 0.5 * costs.cost[ordering.sequence[p - 1]];
  const double value = numerator / (static_cast<double>(positions.size()) * suffix[1]);
  return {Metric::ApfdC, value, ordering.provenance};
}

PrefixCurve pmk_curve(const Ordering& ordering, const KillMatrix& kill) {
  ordering.validate(kill.num_tests());
  Bitset reachable(kill.num_mutants());
  for (std::size_t t = 0; t < kill.num_tests(); ++t) reachable |= kill.row(t);
  const std::size_t total = reachable.count();
  if (total == 0) throw Error(ErrorKind::DegenerateDenominator, "no mutant is killed by the full suite");

  PrefixCurve curve;
  curve.values.reserve(ordering.size());
  Bitset killed(kill.num_mutants());
  std::size_t count = 0;
  for (auto t : ordering.sequence) {
    count += kill.row(t).count_and_not(killed);
    killed |= kill.row(t);
    curve.values.push_back(static_cast<double>(count) / static_cast<double>(total));
  }
  return curve;
}

PrefixCurve pmd_curve(const Ordering& ordering, const KillMatrix& kill) {
  ordering.validate(kill.num_tests());
  PartitionRefiner refiner(kill);
  std::vector<std::size_t> counts;
  counts.reserve(ordering.size());
  for (auto t : ordering.sequence) {
    refiner.refine(t);
    counts.push_back(refiner.unique_count());
  }
  const std::size_t total = counts.back();
  if (total == 0) throw Error(ErrorKind::DegenerateDenominator, "the full suite distinguishes no program");
  PrefixCurve curve;
  curve.values.reserve(counts.size());
  for (auto c : counts) curve.values.push_back(static_cast<double>(c) / static_cast<double>(total));
  return curve;
}

MetricValue apmk(const Ordering& ordering, const KillMatrix& kill) {
  return {Metric::Apmk, apxx(pmk_curve(ordering, kill)), ordering.provenance};
}

MetricValue apmd(const Ordering& ordering, const KillMatrix& kill) {
  return {Metric::Apmd, apxx(pmd_curve(ordering, kill)), ordering.provenance};
}

MutationScores mutation_scores(const Ordering& ordering, const KillMatrix& kill) {
  ordering.validate(kill.num_tests());
  PartitionRefiner refiner(kill);
  Bitset killed(kill.num_mutants());
  std::size_t kill_count = 0;
  double kill_sum = 0.0;
  double unique_sum = 0.0;
  for (auto t : ordering.sequence) {
    kill_count += kill.row(t).count_and_not(killed);
    killed |= kill.row(t);
    refiner.refine(t);
    kill_sum += static_cast<double>(kill_count);
    unique_sum += static_cast<double>(refiner.unique_count());
  }
  // Full-suite totals are the values after the last prefix.
  if (kill_count == 0) throw Error(ErrorKind::DegenerateDenominator, "no mutant is killed by the full suite");
  if (refiner.unique_count() == 0) throw Error(ErrorKind::DegenerateDenominator, "the full suite distinguishes no program");
  const double n = static_cast<double>(ordering.size());
  const double tail = 1.0 / (2.0 * n);
  MutationScores scores;
  scores.apmk = kill_sum / (static_cast<double>(kill_count) * n) - tail;
  scores.apmd = unique_sum / (static_cast<double>(refiner.unique_count()) * n) - tail;
  return scores;
}

}  // namespace mutprio
