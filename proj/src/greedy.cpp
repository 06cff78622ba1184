#include "mutprio/greedy.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <vector>

#include "mutprio/adequacy.hpp"
#include "mutprio/random.hpp"

namespace mutprio {

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::Rnd: return "RND";
    case Technique::Scv: return "SCV";
    case Technique::Grk: return "GRK";
    case Technique::Grd: return "GRD";
    case Technique::Hyb: return "HYB";
    case Technique::Mok: return "MOK";
    case Technique::Mod: return "MOD";
  }
  return "UNKNOWN";
}

Technique parse_technique(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "rnd") return Technique::Rnd;
  if (lower == "scv") return Technique::Scv;
  if (lower == "grk") return Technique::Grk;
  if (lower == "grd") return Technique::Grd;
  if (lower == "hyb") return Technique::Hyb;
  if (lower == "mok") return Technique::Mok;
  if (lower == "mod") return Technique::Mod;
  throw Error(ErrorKind::InvalidArgument, "unknown technique '" + std::string(name) + "'");
}

bool is_greedy(Technique technique) noexcept { return technique != Technique::Mok && technique != Technique::Mod; }

void GreedyConfig::validate() const {
  if (!is_greedy(technique)) throw Error(ErrorKind::InvalidArgument, std::string(to_string(technique)) + " is not a greedy technique");
  if (technique == Technique::Hyb) {
    if (!weight) throw Error(ErrorKind::InvalidArgument, "HYB requires a weight");
    if (!(*weight >= 0.0 && *weight <= 1.0)) throw Error(ErrorKind::InvalidArgument, "HYB weight must lie in [0, 1]");
  } else if (weight) {
    throw Error(ErrorKind::InvalidArgument, "only HYB takes a weight");
  }
}

std::string GreedyConfig::label() const {
  std::string out(to_string(technique));
  if (technique == Technique::Hyb && weight) {
    std::ostringstream w;
    w << *weight;
    out += "-" + w.str();
  }
  return out;
}

namespace {

void check_candidate(std::size_t n, std::span<const std::size_t> selected, std::size_t candidate) {
  if (candidate >= n) throw Error(ErrorKind::OutOfRange, "candidate test out of range");
  for (auto t : selected) {
    if (t >= n) throw Error(ErrorKind::OutOfRange, "selected test out of range");
    if (t == candidate) throw Error(ErrorKind::InvalidArgument, "candidate is already selected");
  }
}

// Running "additional" baseline for one technique.
class GainModel {
 public:
  GainModel(const KillMatrix& kill, const CoverageMatrix* coverage, const GreedyConfig& config)
      : technique_(config.technique), weight_(config.weight.value_or(0.0)), kill_(kill), coverage_(coverage),
        refiner_(kill) {
    if (technique_ == Technique::Scv)
      uncovered_ = Bitset(coverage->num_statements());
    else
      uncovered_ = Bitset(kill.num_mutants());
    reset();
  }

  void reset() {
    uncovered_.fill();
    refiner_.reset();
    baseline_size_ = 0;
  }

  bool baseline_empty() const noexcept { return baseline_size_ == 0; }

  double score(std::size_t t) const {
    switch (technique_) {
      case Technique::Scv: return static_cast<double>(coverage_->row(t).count_and(uncovered_));
      case Technique::Grk: return static_cast<double>(kill_.row(t).count_and(uncovered_));
      case Technique::Grd: return static_cast<double>(refiner_.gain(t));
      case Technique::Hyb: {
        const auto kappa = static_cast<double>(kill_.row(t).count_and(uncovered_));
        const auto delta = static_cast<double>(refiner_.gain(t));
        return weight_ * kappa + (1.0 - weight_) * delta;
      }
      default: return 0.0;
    }
  }

  void add(std::size_t t) {
    switch (technique_) {
      case Technique::Scv: uncovered_.subtract(coverage_->row(t)); break;
      case Technique::Grk: uncovered_.subtract(kill_.row(t)); break;
      case Technique::Grd: refiner_.refine(t); break;
      case Technique::Hyb:
        uncovered_.subtract(kill_.row(t));
        refiner_.refine(t);
        break;
      default: break;
    }
    ++baseline_size_;
  }

 private:
  Technique technique_;
  double weight_;
  const KillMatrix& kill_;
  const CoverageMatrix* coverage_;
  PartitionRefiner refiner_;
  Bitset uncovered_;  // unkilled mutants (GRK/HYB) or uncovered statements (SCV)
  std::size_t baseline_size_ = 0;
};

}  // namespace

std::size_t additional_gain_kill(const KillMatrix& kill, std::span<const std::size_t> selected, std::size_t candidate) {
  check_candidate(kill.num_tests(), selected, candidate);
  Bitset killed(kill.num_mutants());
  for (auto t : selected) killed |= kill.row(t);
  return kill.row(candidate).count_and_not(killed);
}

std::size_t additional_gain_distinguish(const KillMatrix& kill, std::span<const std::size_t> selected,
                                        std::size_t candidate) {
  check_candidate(kill.num_tests(), selected, candidate);
  PartitionRefiner refiner(kill);
  for (auto t : selected) refiner.refine(t);
  return refiner.gain(candidate);
}

Ordering prioritize_greedy(const KillMatrix& kill, const CoverageMatrix* coverage, const GreedyConfig& config) {
  config.validate();
  const std::size_t n = kill.num_tests();
  if (config.technique == Technique::Scv) {
    if (!coverage) throw Error(ErrorKind::MissingInput, "SCV requires a coverage matrix");
    if (coverage->num_tests() != n) throw Error(ErrorKind::TestSetMismatch, "coverage and kill matrices differ in tests");
  }

  Ordering ordering;
  ordering.provenance.technique = config.label();
  ordering.provenance.seed = config.seed;
  if (config.weight) {
    std::ostringstream params;
    params << "w=" << *config.weight;
    ordering.provenance.parameters = params.str();
  }
  SplitMix64 rng(config.seed);

  if (config.technique == Technique::Rnd) {
    ordering.sequence.resize(n);
    std::iota(ordering.sequence.begin(), ordering.sequence.end(), std::size_t{0});
    shuffle(std::span(ordering.sequence), rng);
    return ordering;
  }

  GainModel model(kill, coverage, config);
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<double> scores(n);
  std::vector<std::size_t> best;
  ordering.sequence.reserve(n);

  auto evaluate = [&] {
    double top = 0.0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      scores[k] = model.score(remaining[k]);
      top = std::max(top, scores[k]);
    }
    return top;
  };

  while (!remaining.empty()) {
    double top = evaluate();
    if (top <= 0.0 && !model.baseline_empty()) {
      model.reset();
      top = evaluate();
    }
    best.clear();
    for (std::size_t k = 0; k < remaining.size(); ++k)
      if (scores[k] == top) best.push_back(k);
    const std::size_t pick = best[rng.uniform_index(best.size())];
    const std::size_t test = remaining[pick];
    ordering.sequence.push_back(test);
    model.add(test);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return ordering;
}

}  // namespace mutprio
