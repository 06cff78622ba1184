#include "mutprio/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "mutprio/random.hpp"

namespace mutprio {

using nlohmann::json;

std::string format_value(double value) {
  std::ostringstream os;
  os << std::setprecision(12) << value;
  return os.str();
}

std::string TechniqueSpec::label() const {
  if (technique == Technique::Hyb) return GreedyConfig{technique, weight, 0}.label();
  return std::string(to_string(technique));
}

void TechniqueSpec::validate() const {
  if (is_multi_objective()) {
    if (weight) throw Error(ErrorKind::InvalidArgument, "only HYB takes a weight");
    moo.validate();
  } else {
    GreedyConfig{technique, weight, 0}.validate();
  }
}

ExperimentInputs ExperimentInputs::load(const std::filesystem::path& kill,
                                        const std::optional<std::filesystem::path>& coverage,
                                        const std::optional<std::filesystem::path>& faults,
                                        const std::optional<std::filesystem::path>& costs) {
  ExperimentInputs inputs{load_kill_matrix(kill), std::nullopt, std::nullopt, std::nullopt};
  if (coverage) inputs.coverage = load_coverage_matrix(*coverage);
  if (faults) inputs.faults = load_fault_matrix(*faults);
  if (costs) inputs.costs = load_cost_vector(*costs);
  inputs.validate();
  return inputs;
}

ValidationReport ExperimentInputs::validate() const {
  return validate_bundle(kill, coverage ? &*coverage : nullptr, faults ? &*faults : nullptr, costs ? &*costs : nullptr);
}

void ExperimentConfig::validate() const {
  if (techniques.empty()) throw Error(ErrorKind::InvalidArgument, "experiment lists no techniques");
  if (runs_greedy < 1 || runs_moo < 1) throw Error(ErrorKind::InvalidArgument, "run counts must be at least 1");
  if (metrics.empty()) throw Error(ErrorKind::InvalidArgument, "experiment lists no metrics");
  if (kill.empty()) throw Error(ErrorKind::MissingInput, "experiment needs a kill matrix");
  for (const auto& t : techniques) t.validate();
  std::vector<std::string> labels;
  for (const auto& t : techniques) {
    auto label = t.label();
    if (std::find(labels.begin(), labels.end(), label) != labels.end())
      throw Error(ErrorKind::DuplicateName, "technique '" + label + "' is listed twice");
    labels.push_back(label);
    if (t.technique == Technique::Scv && !coverage) throw Error(ErrorKind::MissingInput, "SCV requires a coverage matrix");
  }
  for (auto m : metrics) {
    if ((m == Metric::Apfd || m == Metric::ApfdC) && !faults)
      throw Error(ErrorKind::MissingInput, std::string(to_string(m)) + " requires a fault matrix");
    if (m == Metric::ApfdC && !costs) throw Error(ErrorKind::MissingInput, "apfdc requires a cost vector");
  }
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

std::optional<std::filesystem::path> get_path(const json& j, const char* key, const std::filesystem::path& base) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  std::filesystem::path p = it->get<std::string>();
  return p.is_absolute() || base.empty() ? p : base / p;
}

TechniqueSpec parse_technique_spec(const json& j) {
  TechniqueSpec spec;
  if (j.is_string()) {
    spec.technique = parse_technique(j.get<std::string>());
    return spec;
  }
  spec.technique = parse_technique(j.at("technique").get<std::string>());
  if (j.contains("weight")) spec.weight = j.at("weight").get<double>();
  spec.moo.population_size = get_or<std::size_t>(j, "populationSize", spec.moo.population_size);
  spec.moo.crossover_rate = get_or<double>(j, "crossoverRate", spec.moo.crossover_rate);
  spec.moo.mutation_rate = get_or<double>(j, "mutationRate", spec.moo.mutation_rate);
  spec.moo.max_evaluations = get_or<std::size_t>(j, "maxEvaluations", spec.moo.max_evaluations);
  return spec;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(in);
    ExperimentConfig config;
    for (const auto& t : j.at("techniques")) config.techniques.push_back(parse_technique_spec(t));
    config.runs_greedy = get_or<std::size_t>(j, "runsGreedy", config.runs_greedy);
    config.runs_moo = get_or<std::size_t>(j, "runsMoo", config.runs_moo);
    config.base_seed = get_or<std::uint64_t>(j, "baseSeed", config.base_seed);
    config.alpha = get_or<double>(j, "alpha", config.alpha);
    if (j.contains("metrics")) {
      config.metrics.clear();
      for (const auto& m : j.at("metrics")) config.metrics.push_back(parse_metric(m.get<std::string>()));
    }
    auto mode = get_or<std::string>(j, "faultMode", "strict");
    if (mode == "strict")
      config.fault_mode = FaultMode::Strict;
    else if (mode == "lenient")
      config.fault_mode = FaultMode::Lenient;
    else
      throw Error(ErrorKind::InvalidArgument, "faultMode must be strict or lenient");
    auto kill = get_path(j, "kill", base_dir);
    if (!kill) throw Error(ErrorKind::MissingInput, "experiment needs a kill matrix");
    config.kill = *kill;
    config.coverage = get_path(j, "coverage", base_dir);
    config.faults = get_path(j, "faults", base_dir);
    config.costs = get_path(j, "costs", base_dir);
    config.validate();
    return config;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return parse_experiment_config(in, path.parent_path());
}

PrioritizationResult prioritize(const TechniqueSpec& spec, const ExperimentInputs& inputs, std::uint64_t seed) {
  spec.validate();
  PrioritizationResult result;
  if (!spec.is_multi_objective()) {
    GreedyConfig config{spec.technique, spec.weight, seed};
    result.ordering = prioritize_greedy(inputs.kill, inputs.coverage ? &*inputs.coverage : nullptr, config);
    return result;
  }
  MooConfig moo = spec.moo;
  moo.seed = seed;
  auto nsga = nsga2(inputs.kill, moo);
  SplitMix64 select_rng(~seed);
  const auto& chosen = spec.technique == Technique::Mok ? select_mok(nsga.front, select_rng) : select_mod(nsga.front, select_rng);
  result.ordering = chosen.ordering;
  result.ordering.provenance = {spec.label(), seed, ""};
  result.evaluations = nsga.evaluations;
  result.front = std::move(nsga.front);
  return result;
}

SampleSet TechniqueResult::samples(Metric metric) const {
  SampleSet s;
  s.label = label;
  for (const auto& run : runs)
    for (const auto& m : run.metrics)
      if (m.metric == metric) s.values.push_back(m.value);
  return s;
}

namespace {

MetricValue measure(Metric metric, const Ordering& ordering, const ExperimentInputs& inputs, FaultMode mode) {
  switch (metric) {
    case Metric::Apfd: return apfd(ordering, *inputs.faults, mode);
    case Metric::ApfdC: return apfd_c(ordering, *inputs.faults, *inputs.costs, mode);
    case Metric::Apmk: return apmk(ordering, inputs.kill);
    case Metric::Apmd: return apmd(ordering, inputs.kill);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown metric");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  auto inputs = ExperimentInputs::load(config.kill, config.coverage, config.faults, config.costs);
  return run_experiment(config, inputs);
}

ExperimentReport run_experiment(const ExperimentConfig& config, const ExperimentInputs& inputs) {
  if (config.techniques.empty()) throw Error(ErrorKind::InvalidArgument, "experiment lists no techniques");
  for (const auto& t : config.techniques) t.validate();
  for (auto m : config.metrics) {
    if ((m == Metric::Apfd || m == Metric::ApfdC) && !inputs.faults)
      throw Error(ErrorKind::MissingInput, std::string(to_string(m)) + " requires a fault matrix");
    if (m == Metric::ApfdC && !inputs.costs) throw Error(ErrorKind::MissingInput, "apfdc requires a cost vector");
  }
  inputs.validate();

  ExperimentReport report;
  report.test_names = inputs.kill.test_names();
  report.metrics = config.metrics;
  for (std::size_t ti = 0; ti < config.techniques.size(); ++ti) {
    const auto& spec = config.techniques[ti];
    TechniqueResult result;
    result.label = spec.label();
    const std::size_t runs = spec.is_multi_objective() ? config.runs_moo : config.runs_greedy;
    for (std::size_t r = 0; r < runs; ++r) {
      RunRecord record;
      record.run = r;
      record.seed = derive_seed(config.base_seed, ti, r);
      const auto start = std::chrono::steady_clock::now();
      auto prioritized = prioritize(spec, inputs, record.seed);
      const auto stop = std::chrono::steady_clock::now();
      record.millis = std::chrono::duration<double, std::milli>(stop - start).count();
      record.ordering = std::move(prioritized.ordering);
      record.front = std::move(prioritized.front);
      for (auto m : config.metrics) record.metrics.push_back(measure(m, record.ordering, inputs, config.fault_mode));
      result.runs.push_back(std::move(record));
    }
    report.techniques.push_back(std::move(result));
  }

  for (std::size_t i = 0; i < report.techniques.size(); ++i) {
    for (std::size_t j = i + 1; j < report.techniques.size(); ++j) {
      for (auto m : config.metrics) {
        auto a = report.techniques[i].samples(m);
        auto b = report.techniques[j].samples(m);
        PairwiseComparison c;
        c.a = a.label;
        c.b = b.label;
        c.metric = m;
        c.u = mann_whitney_u(a, b).u;
        c.verdict = compare(a, b, config.alpha);
        report.comparisons.push_back(std::move(c));
      }
    }
  }
  return report;
}

void write_front(std::ostream& out, const ParetoFront& front, const std::vector<std::string>& test_names) {
  out << "member,apmk,apmd,ordering\n";
  for (std::size_t k = 0; k < front.members.size(); ++k) {
    const auto& m = front.members[k];
    out << k << ',' << format_value(m.fitness.apmk) << ',' << format_value(m.fitness.apmd) << ',';
    for (std::size_t i = 0; i < m.ordering.sequence.size(); ++i) out << (i ? " " : "") << test_names[m.ordering.sequence[i]];
    out << '\n';
  }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void emit_reports(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  std::vector<TestId> tests;
  for (std::size_t i = 0; i < report.test_names.size(); ++i) tests.push_back({report.test_names[i], i});

  auto metrics_csv = open_output(out_dir / "metrics.csv");
  metrics_csv << "technique,run,metric,value\n";
  auto timing_csv = open_output(out_dir / "timing.csv");
  timing_csv << "technique,run,millis\n";

  for (const auto& technique : report.techniques) {
    for (const auto& run : technique.runs) {
      auto name = "run_" + std::to_string(run.run) + ".csv";
      {
        auto out = open_output(out_dir / "orderings" / technique.label / name);
        write_ordering(out, run.ordering, tests);
      }
      if (run.front) {
        auto out = open_output(out_dir / "fronts" / technique.label / name);
        write_front(out, *run.front, report.test_names);
      }
      for (const auto& m : run.metrics)
        metrics_csv << technique.label << ',' << run.run << ',' << to_string(m.metric) << ',' << format_value(m.value) << '\n';
      timing_csv << technique.label << ',' << run.run << ',' << format_value(run.millis) << '\n';
    }
  }

  json comparisons = json::array();
  for (const auto& c : report.comparisons) {
    comparisons.push_back({{"a", c.a},
                           {"b", c.b},
                           {"metric", std::string(to_string(c.metric))},
                           {"U", c.u},
                           {"p", c.verdict.p_value},
                           {"a12", c.verdict.a12},
                           {"verdict", std::string(to_string(c.verdict.outcome))}});
  }
  auto out = open_output(out_dir / "comparisons.json");
  out << comparisons.dump(2) << '\n';
  if (!out || !metrics_csv || !timing_csv) throw Error(ErrorKind::Io, "failed writing reports under '" + out_dir.string() + "'");
}

}  // namespace mutprio
