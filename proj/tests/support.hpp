#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// work from raw 0/1 tables and never call into the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mutprio/model.hpp"
#include "mutprio/random.hpp"

namespace mutprio::testing {

using Table = std::vector<std::vector<int>>;

inline std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline KillMatrix kill_from(const Table& cells) { return KillMatrix(names("t", cells.size()), names("m", cells.front().size()), cells); }
inline FaultMatrix faults_from(const Table& cells) { return FaultMatrix(names("t", cells.size()), names("f", cells.front().size()), cells); }
inline CoverageMatrix coverage_from(const Table& cells) {
  return CoverageMatrix(names("t", cells.size()), names("s", cells.front().size()), cells);
}

// Working example: t1 kills every mutant, t2 kills m3/m4, t3 kills m2/m4.
inline const Table kFixA = {
    {1, 1, 1, 1},
    {0, 0, 1, 1},
    {0, 1, 0, 1},
};
inline KillMatrix fix_a() { return kill_from(kFixA); }

inline Table random_table(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  Table t(rows, std::vector<int>(cols));
  for (auto& r : t)
    for (auto& c : r) c = bit(rng) ? 1 : 0;
  return t;
}

// Every column has at least one 1 (each fault detected by some test).
inline Table random_detected_table(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density) {
  auto t = random_table(rng, rows, cols, density);
  std::uniform_int_distribution<std::size_t> pick(0, rows - 1);
  for (std::size_t j = 0; j < cols; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < rows; ++i) any = any || t[i][j];
    if (!any) t[pick(rng)][j] = 1;
  }
  return t;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Ordering ordering_of(std::vector<std::size_t> seq) {
  Ordering o;
  o.sequence = std::move(seq);
  return o;
}

namespace oracle {

// d-vector of column j (or the original when j == cols) over `tests`.
inline std::vector<int> dvec(const Table& t, const std::vector<std::size_t>& tests, std::size_t j) {
  std::vector<int> v;
  for (auto i : tests) v.push_back(j < t.front().size() ? t[i][j] : 0);
  return v;
}

// Members of M' whose d-vector differs from every other member's, by direct
// pairwise comparison.
inline std::size_t unique_count(const Table& t, const std::vector<std::size_t>& tests) {
  const std::size_t universe = t.front().size() + 1;
  std::size_t unique = 0;
  for (std::size_t a = 0; a < universe; ++a) {
    bool alone = true;
    for (std::size_t b = 0; b < universe && alone; ++b)
      if (a != b && dvec(t, tests, a) == dvec(t, tests, b)) alone = false;
    if (alone) ++unique;
  }
  return unique;
}

inline std::size_t killed_count(const Table& t, const std::vector<std::size_t>& tests) {
  std::size_t killed = 0;
  for (std::size_t j = 0; j < t.front().size(); ++j) {
    bool k = false;
    for (auto i : tests) k = k || t[i][j];
    if (k) ++killed;
  }
  return killed;
}

inline bool k_adequate(const Table& t, const std::vector<std::size_t>& tests) { return killed_count(t, tests) == t.front().size(); }
inline bool d_adequate(const Table& t, const std::vector<std::size_t>& tests) {
  return unique_count(t, tests) == t.front().size() + 1;
}

// APFD from first-detection positions, computed from a table.
inline double apfd_positions(const Table& faults, const std::vector<std::size_t>& order) {
  const std::size_t n = order.size();
  const std::size_t m = faults.front().size();
  double sum = 0.0;
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t k = 0; k < n; ++k)
      if (faults[order[k]][f]) {
        sum += static_cast<double>(k + 1);
        break;
      }
  }
  return 1.0 - sum / static_cast<double>(n * m) + 1.0 / (2.0 * static_cast<double>(n));
}

// Area under a prefix curve of integer counts normalized by the last count.
inline double auc_of_counts(const std::vector<std::size_t>& counts) {
  const double n = static_cast<double>(counts.size());
  double sum = 0.0;
  for (auto c : counts) sum += static_cast<double>(c) / static_cast<double>(counts.back());
  return sum / n - 1.0 / (2.0 * n);
}

inline double apmk(const Table& t, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> counts;
  std::vector<std::size_t> prefix;
  for (auto i : order) {
    prefix.push_back(i);
    counts.push_back(killed_count(t, prefix));
  }
  return auc_of_counts(counts);
}

inline double apmd(const Table& t, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> counts;
  std::vector<std::size_t> prefix;
  for (auto i : order) {
    prefix.push_back(i);
    counts.push_back(unique_count(t, prefix));
  }
  return auc_of_counts(counts);
}

inline double kill_gain(const Table& t, const std::vector<std::size_t>& base, std::size_t c) {
  auto more = base;
  more.push_back(c);
  return static_cast<double>(killed_count(t, more) - killed_count(t, base));
}

inline double distinguish_gain(const Table& t, const std::vector<std::size_t>& base, std::size_t c) {
  auto more = base;
  more.push_back(c);
  return static_cast<double>(unique_count(t, more)) - static_cast<double>(unique_count(t, base));
}

inline double hybrid_gain(const Table& t, const std::vector<std::size_t>& base, std::size_t c, double w) {
  return w * kill_gain(t, base, c) + (1.0 - w) * distinguish_gain(t, base, c);
}

inline constexpr std::size_t kNoViolation = static_cast<std::size_t>(-1);

// Replays `order` step by step with brute-force gains. The baseline is the
// tests chosen since the last plateau reset. Returns the first step whose
// choice is not in the argmax set, or kNoViolation. With `seed`, also checks
// that the choice is the one a single draw (value mod k) selects among the
// argmax candidates in ascending test order.
template <typename Gain>
std::size_t first_non_argmax(std::size_t n, const std::vector<std::size_t>& order, Gain gain,
                             const std::uint64_t* seed = nullptr) {
  if (order.size() != n) return 0;
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> baseline;
  SplitMix64 rng(seed ? *seed : 0);
  for (std::size_t step = 0; step < n; ++step) {
    auto scores_of = [&] {
      std::vector<double> s;
      for (auto c : remaining) s.push_back(gain(baseline, c));
      return s;
    };
    auto scores = scores_of();
    double top = *std::max_element(scores.begin(), scores.end());
    if (top <= 0.0 && !baseline.empty()) {
      baseline.clear();
      scores = scores_of();
      top = *std::max_element(scores.begin(), scores.end());
    }
    std::vector<std::size_t> best;
    for (std::size_t k = 0; k < remaining.size(); ++k)
      if (scores[k] == top) best.push_back(remaining[k]);
    const std::size_t chosen = order[step];
    if (std::find(best.begin(), best.end(), chosen) == best.end()) return step;
    if (seed && best[rng.next() % best.size()] != chosen) return step;
    baseline.push_back(chosen);
    remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
  }
  return kNoViolation;
}

inline bool dominates(double a1, double a2, double b1, double b2) { return a1 >= b1 && a2 >= b2 && (a1 > b1 || a2 > b2); }

}  // namespace oracle
}  // namespace mutprio::testing
