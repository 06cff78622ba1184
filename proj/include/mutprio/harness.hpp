#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mutprio/greedy.hpp"
#include "mutprio/metrics.hpp"
#include "mutprio/model.hpp"
#include "mutprio/moo.hpp"
#include "mutprio/stats.hpp"

namespace mutprio {

// One technique entry of an experiment: a greedy configuration or a
// multi-objective selector (MOK/MOD) with its NSGA-II settings.
struct TechniqueSpec {
  Technique technique = Technique::Grk;
  std::optional<double> weight;
  MooConfig moo;

  bool is_multi_objective() const noexcept { return !is_greedy(technique); }
  std::string label() const;
  void validate() const;
};

struct ExperimentInputs {
  KillMatrix kill;
  std::optional<CoverageMatrix> coverage;
  std::optional<FaultMatrix> faults;
  std::optional<CostVector> costs;

  static ExperimentInputs load(const std::filesystem::path& kill, const std::optional<std::filesystem::path>& coverage,
                               const std::optional<std::filesystem::path>& faults,
                               const std::optional<std::filesystem::path>& costs);
  ValidationReport validate() const;
};

struct ExperimentConfig {
  std::vector<TechniqueSpec> techniques;
  std::size_t runs_greedy = 100;
  std::size_t runs_moo = 30;
  std::uint64_t base_seed = 0;
  std::vector<Metric> metrics{Metric::Apfd};
  double alpha = kDefaultAlpha;
  FaultMode fault_mode = FaultMode::Strict;
  std::filesystem::path kill;
  std::optional<std::filesystem::path> coverage;
  std::optional<std::filesystem::path> faults;
  std::optional<std::filesystem::path> costs;

  void validate() const;
};

// JSON keys mirror the field names in camelCase: techniques, runsGreedy,
// runsMoo, baseSeed, metrics, alpha, faultMode, kill, coverage, faults, costs.
// Relative input paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct PrioritizationResult {
  Ordering ordering;
  std::optional<ParetoFront> front;  // MOK/MOD only
  std::size_t evaluations = 0;
};

// Runs one technique once with the given stream seed.
PrioritizationResult prioritize(const TechniqueSpec& spec, const ExperimentInputs& inputs, std::uint64_t seed);

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  Ordering ordering;
  std::optional<ParetoFront> front;
  std::vector<MetricValue> metrics;
  double millis = 0.0;  // prioritization wall time only
};

struct TechniqueResult {
  std::string label;
  std::vector<RunRecord> runs;

  SampleSet samples(Metric metric) const;
};

struct PairwiseComparison {
  std::string a;
  std::string b;
  Metric metric = Metric::Apfd;
  double u = 0.0;
  Verdict verdict;
};

struct ExperimentReport {
  std::vector<std::string> test_names;
  std::vector<Metric> metrics;
  std::vector<TechniqueResult> techniques;
  std::vector<PairwiseComparison> comparisons;
};

// Technique i, run r uses derive_seed(baseSeed, i, r).
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const ExperimentInputs& inputs);

// Writes orderings/<label>/run_<r>.csv, fronts/<label>/run_<r>.csv (MOK/MOD),
// metrics.csv, comparisons.json and timing.csv under `out_dir`.
void emit_reports(const ExperimentReport& report, const std::filesystem::path& out_dir);

// `member,apmk,apmd,ordering` with the ordering as space-separated test names.
void write_front(std::ostream& out, const ParetoFront& front, const std::vector<std::string>& test_names);

// 12 significant digits, shared by every CSV writer.
std::string format_value(double value);

}  // namespace mutprio
