#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mutprio/bitset.hpp"
#include "mutprio/model.hpp"

namespace mutprio {

// A class of programs (mutants, and for Root also the original) that share
// one full-suite d-vector. kill_set holds that d-vector as a set of tests.
struct MdgNode {
  std::vector<std::size_t> members;  // kOriginal first when present
  Bitset kill_set;
};

struct MdgEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<std::size_t> tests;  // kill_set(to) \ kill_set(from), ascending
  double fault_fraction = 0.0;
};

// Mutant Distinguishment Graph: Hasse diagram of the strict-subset order on
// node kill sets. Node 0 is Root (empty kill set). Remaining nodes are sorted
// by kill-set size, then by smallest member.
struct Mdg {
  std::vector<MdgNode> nodes;
  std::vector<MdgEdge> edges;
  std::size_t root = 0;
  std::vector<std::string> test_names;
  std::vector<std::string> mutant_names;

  std::vector<std::size_t> successors(std::size_t node) const;
  bool reachable(std::size_t from, std::size_t to) const;
};

Mdg build_mdg(const KillMatrix& kill, std::span<const std::size_t> fault_tests);

// True iff every path x -> y carries exactly kill_set(y) \ kill_set(x) in the
// union of its edge labels. Throws InvalidArgument if y is unreachable from x.
bool chain_consistency(const Mdg& mdg, std::size_t x, std::size_t y);

// |tests in `fault_tests`| / |tests|.
double fault_fraction(std::span<const std::size_t> tests, std::span<const std::size_t> fault_tests);

// 1 + 9 * fraction: never thinner than 1, even with no fault-detecting test.
double edge_penwidth(double fault_fraction);

// DOT digraph; edge widths are computed against `fault_tests`.
std::string render_dot(const Mdg& mdg, std::span<const std::size_t> fault_tests);

}  // namespace mutprio
