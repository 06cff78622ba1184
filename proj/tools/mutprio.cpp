// mutprio: mutation-based test-case prioritization from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mutprio/adequacy.hpp"
#include "mutprio/harness.hpp"
#include "mutprio/mdg.hpp"
#include "mutprio/random.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mutprio;

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return out;
}

std::optional<fs::path> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void print_warnings(const ValidationReport& report) {
  for (const auto& f : report.undetected_faults) std::cerr << "warning: fault '" << f << "' is detected by no test\n";
  for (const auto& m : report.unkilled_mutants) std::cerr << "warning: mutant '" << m << "' is killed by no test\n";
  for (const auto& t : report.zero_kill_tests) std::cerr << "warning: test '" << t << "' kills no mutant\n";
}

int analyze_mutants(const std::string& kill_path, const std::string& out_path) {
  auto kill = load_kill_matrix(kill_path);
  auto report = indistinguishable_groups(kill);
  json groups = json::array();
  for (const auto& g : report.groups) {
    json members = json::array();
    for (auto m : g.members) members.push_back(m == kOriginal ? std::string("original") : kill.mutants()[m].name);
    groups.push_back({{"members", members}, {"classification", to_string(g.kind)}});
  }
  json doc = {{"groups", groups}};
  auto out = open_output(out_path);
  out << doc.dump(2) << '\n';
  return 0;
}

struct EvaluateArgs {
  std::vector<std::string> orderings;
  std::string kill, faults, costs, metrics = "apfd", out;
  bool lenient = false;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

int evaluate(const EvaluateArgs& args) {
  auto inputs = ExperimentInputs::load(args.kill, std::nullopt, optional_path(args.faults), optional_path(args.costs));
  print_warnings(inputs.validate());
  const auto mode = args.lenient ? FaultMode::Lenient : FaultMode::Strict;
  std::vector<Metric> metrics;
  for (const auto& m : split_list(args.metrics)) metrics.push_back(parse_metric(m));

  auto out = open_output(args.out);
  out << "run,metric,value\n";
  for (std::size_t run = 0; run < args.orderings.size(); ++run) {
    auto ordering = load_ordering(args.orderings[run], inputs.kill.tests());
    for (auto m : metrics) {
      double value = 0.0;
      switch (m) {
        case Metric::Apfd:
          if (!inputs.faults) throw Error(ErrorKind::MissingInput, "apfd requires --faults");
          value = apfd(ordering, *inputs.faults, mode).value;
          break;
        case Metric::ApfdC:
          if (!inputs.faults || !inputs.costs) throw Error(ErrorKind::MissingInput, "apfdc requires --faults and --costs");
          value = apfd_c(ordering, *inputs.faults, *inputs.costs, mode).value;
          break;
        case Metric::Apmk: value = apmk(ordering, inputs.kill).value; break;
        case Metric::Apmd: value = apmd(ordering, inputs.kill).value; break;
      }
      out << run << ',' << to_string(m) << ',' << format_value(value) << '\n';
    }
  }
  return 0;
}

struct PrioritizeArgs {
  std::string technique, kill, coverage, out;
  std::optional<double> weight;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  MooConfig moo;
};

int prioritize_cmd(const PrioritizeArgs& args) {
  auto inputs = ExperimentInputs::load(args.kill, optional_path(args.coverage), std::nullopt, std::nullopt);
  print_warnings(inputs.validate());
  TechniqueSpec spec;
  spec.technique = parse_technique(args.technique);
  spec.weight = args.weight;
  spec.moo = args.moo;
  spec.validate();
  fs::create_directories(args.out);
  for (std::size_t r = 0; r < args.runs; ++r) {
    auto result = prioritize(spec, inputs, derive_seed(args.seed, 0, r));
    auto name = "run_" + std::to_string(r) + ".csv";
    {
      auto out = open_output(fs::path(args.out) / name);
      write_ordering(out, result.ordering, inputs.kill.tests());
    }
    if (result.front) {
      auto out = open_output(fs::path(args.out) / ("front_" + std::to_string(r) + ".csv"));
      write_front(out, *result.front, inputs.kill.test_names());
    }
  }
  return 0;
}

// Reads the `value` column, optionally keeping only rows whose `metric` matches.
SampleSet read_samples(const fs::path& path, const std::string& metric) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "'" + path.string() + "' is empty");
  auto header = split_list(line);
  auto col = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    return std::nullopt;
  };
  auto value_col = col("value");
  if (!value_col) throw Error(ErrorKind::Parse, "'" + path.string() + "' has no value column");
  auto metric_col = col("metric");
  SampleSet samples;
  samples.label = path.stem().string();
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_list(line);
    if (fields.size() != header.size()) throw Error(ErrorKind::RaggedRow, "ragged row in '" + path.string() + "'");
    if (!metric.empty() && metric_col && fields[*metric_col] != metric) continue;
    samples.values.push_back(std::stod(fields[*value_col]));
  }
  return samples;
}

int compare_cmd(const std::string& a_path, const std::string& b_path, double alpha, const std::string& metric,
                const std::string& out_path) {
  auto a = read_samples(a_path, metric);
  auto b = read_samples(b_path, metric);
  auto mw = mann_whitney_u(a, b);
  auto verdict = compare(a, b, alpha);
  json doc = {{"U", mw.u}, {"p", verdict.p_value}, {"a12", verdict.a12}, {"verdict", std::string(to_string(verdict.outcome))}};
  auto out = open_output(out_path);
  out << doc.dump(2) << '\n';
  return 0;
}

int mdg_cmd(const std::string& kill_path, const std::string& faults_path, const std::string& fault_name,
            const std::string& out_path) {
  auto kill = load_kill_matrix(kill_path);
  std::vector<std::size_t> fault_tests;
  if (!faults_path.empty()) {
    auto faults = load_fault_matrix(faults_path);
    validate_bundle(kill, nullptr, &faults, nullptr);
    std::optional<std::size_t> column;
    if (!fault_name.empty()) column = faults.column_index(fault_name);
    for (std::size_t t = 0; t < faults.num_tests(); ++t) {
      const bool detects = column ? faults.at(t, *column) : faults.row(t).any();
      if (detects) fault_tests.push_back(t);
    }
  } else if (!fault_name.empty()) {
    throw Error(ErrorKind::MissingInput, "--fault requires --faults");
  }
  auto graph = build_mdg(kill, fault_tests);
  auto out = open_output(out_path);
  out << render_dot(graph, fault_tests);
  return 0;
}

int experiment_cmd(const std::string& config_path, const std::string& out_dir) {
  auto config = load_experiment_config(config_path);
  auto report = run_experiment(config);
  emit_reports(report, out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutation-based test-case prioritization"};
  app.require_subcommand(1);

  std::string kill, out;

  auto* analyze = app.add_subcommand("analyze-mutants", "Group mutants by full-suite d-vector");
  analyze->add_option("--kill", kill, "Kill matrix CSV")->required();
  analyze->add_option("--out", out, "Output JSON")->required();

  EvaluateArgs eval_args;
  auto* eval = app.add_subcommand("evaluate", "Score orderings with APFD-family metrics");
  eval->add_option("--ordering", eval_args.orderings, "Ordering CSV (repeatable; run = position)")->required();
  eval->add_option("--kill", eval_args.kill, "Kill matrix CSV")->required();
  eval->add_option("--faults", eval_args.faults, "Fault matrix CSV");
  eval->add_option("--costs", eval_args.costs, "Cost vector CSV");
  eval->add_option("--metrics", eval_args.metrics, "Comma-separated: apfd,apfdc,apmk,apmd")->capture_default_str();
  eval->add_flag("--lenient", eval_args.lenient, "Drop undetected faults instead of failing");
  eval->add_option("--out", eval_args.out, "Output CSV")->required();

  PrioritizeArgs prio_args;
  double weight = 0.0;
  auto* prio = app.add_subcommand("prioritize", "Produce test orderings");
  prio->add_option("--technique", prio_args.technique, "rnd|scv|grk|grd|hyb|mok|mod")->required();
  auto* weight_opt = prio->add_option("--weight", weight, "HYB weight in [0,1]");
  prio->add_option("--kill", prio_args.kill, "Kill matrix CSV")->required();
  prio->add_option("--coverage", prio_args.coverage, "Coverage matrix CSV (SCV)");
  prio->add_option("--runs", prio_args.runs, "Number of runs")->capture_default_str();
  prio->add_option("--seed", prio_args.seed, "Base seed")->capture_default_str();
  prio->add_option("--pop", prio_args.moo.population_size, "NSGA-II population size")->capture_default_str();
  prio->add_option("--cx", prio_args.moo.crossover_rate, "Crossover rate")->capture_default_str();
  prio->add_option("--mut", prio_args.moo.mutation_rate, "Mutation rate")->capture_default_str();
  prio->add_option("--evals", prio_args.moo.max_evaluations, "Fitness evaluation budget")->capture_default_str();
  prio->add_option("--out", prio_args.out, "Output directory")->required();

  std::string a_path, b_path, metric;
  double alpha = kDefaultAlpha;
  auto* cmp = app.add_subcommand("compare", "Mann-Whitney U and A12 between two metric samples");
  cmp->add_option("--a", a_path, "Metrics CSV with a value column")->required();
  cmp->add_option("--b", b_path, "Metrics CSV with a value column")->required();
  cmp->add_option("--alpha", alpha, "Significance level")->capture_default_str();
  cmp->add_option("--metric", metric, "Only rows with this metric");
  cmp->add_option("--out", out, "Output JSON")->required();

  std::string faults, fault_name;
  auto* mdg = app.add_subcommand("mdg", "Render the Mutant Distinguishment Graph as DOT");
  mdg->add_option("--kill", kill, "Kill matrix CSV")->required();
  mdg->add_option("--faults", faults, "Fault matrix CSV");
  mdg->add_option("--fault", fault_name, "Fault column to highlight (default: any fault)");
  mdg->add_option("--out", out, "Output DOT file")->required();

  std::string config;
  auto* exp = app.add_subcommand("experiment", "Run a seeded multi-technique experiment");
  exp->add_option("--config", config, "Experiment JSON")->required();
  exp->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return analyze_mutants(kill, out);
    if (*eval) return evaluate(eval_args);
    if (*prio) {
      if (*weight_opt) prio_args.weight = weight;
      return prioritize_cmd(prio_args);
    }
    if (*cmp) return compare_cmd(a_path, b_path, alpha, metric, out);
    if (*mdg) return mdg_cmd(kill, faults, fault_name, out);
    if (*exp) return experiment_cmd(config, out);
  } catch (const Error& e) {
    std::cerr << "mutprio: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mutprio: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
