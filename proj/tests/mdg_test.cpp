#include "mutprio/mdg.hpp"

#include <gtest/gtest.h>

#include <random>
#include <regex>
#include <sstream>
#include <set>

#include "mutprio/adequacy.hpp"
#include "support.hpp"

namespace mutprio {
namespace {

using testing::fix_a;
using Tests = std::vector<std::size_t>;

std::set<std::size_t> as_set(const Bitset& b) {
  auto idx = b.indices();
  return {idx.begin(), idx.end()};
}

bool proper_subset(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

const MdgEdge* find_edge(const Mdg& g, std::size_t from, std::size_t to) {
  for (const auto& e : g.edges)
    if (e.from == from && e.to == to) return &e;
  return nullptr;
}

TEST(BuildMdg, WorkingExampleTopology) {
  const Tests faults{2};
  auto g = build_mdg(fix_a(), faults);
  ASSERT_EQ(g.nodes.size(), 5u);
  ASSERT_EQ(g.edges.size(), 5u);
  EXPECT_EQ(g.root, 0u);
  EXPECT_EQ(g.nodes[0].members, (std::vector<std::size_t>{kOriginal}));
  for (std::size_t k = 1; k < 5; ++k) EXPECT_EQ(g.nodes[k].members, (std::vector<std::size_t>{k - 1}));

  struct Expected {
    std::size_t from, to;
    Tests tests;
    double fraction;
  };
  const std::vector<Expected> expected{
      {0, 1, {0}, 0.0}, {1, 2, {2}, 1.0}, {1, 3, {1}, 0.0}, {2, 4, {1}, 0.0}, {3, 4, {2}, 1.0},
  };
  for (const auto& x : expected) {
    const auto* e = find_edge(g, x.from, x.to);
    ASSERT_NE(e, nullptr) << x.from << "->" << x.to;
    EXPECT_EQ(e->tests, x.tests);
    EXPECT_DOUBLE_EQ(e->fault_fraction, x.fraction);
  }
}

TEST(BuildMdg, UnkilledMutantJoinsRoot) {
  auto g = build_mdg(testing::kill_from({{1, 0}, {1, 0}}), Tests{});
  ASSERT_EQ(g.nodes.size(), 2u);
  EXPECT_EQ(g.nodes[0].members, (std::vector<std::size_t>{kOriginal, 1}));
}

TEST(BuildMdg, SingleMutantSingleTest) {
  auto g = build_mdg(testing::kill_from({{1}}), Tests{});
  ASSERT_EQ(g.nodes.size(), 2u);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].tests, Tests{0});
}

TEST(ChainConsistency, WorkingExample) {
  auto g = build_mdg(fix_a(), Tests{2});
  EXPECT_TRUE(chain_consistency(g, 0, 2));
  EXPECT_TRUE(chain_consistency(g, 0, 4));
  EXPECT_TRUE(chain_consistency(g, 1, 4));
  EXPECT_EQ(as_set(g.nodes[2].kill_set), (std::set<std::size_t>{0, 2}));
  EXPECT_THROW(chain_consistency(g, 2, 3), Error);
}

TEST(FaultFraction, Examples) {
  EXPECT_DOUBLE_EQ(fault_fraction(Tests{0, 1}, Tests{1}), 0.5);
  EXPECT_DOUBLE_EQ(fault_fraction(Tests{0}, Tests{}), 0.0);
  EXPECT_DOUBLE_EQ(edge_penwidth(0.0), 1.0);
  EXPECT_DOUBLE_EQ(edge_penwidth(1.0), 10.0);
}

TEST(RenderDot, WorkingExample) {
  auto kill = fix_a();
  auto g = build_mdg(kill, Tests{2});
  auto dot = render_dot(g, Tests{2});
  EXPECT_EQ(dot.rfind("digraph mdg {", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');

  std::regex node_re(R"re(^  n\d+ \[label=".*"\];$)re");
  std::regex edge_re(R"re(^  n(\d+) -> n(\d+) \[label="([^"]*)", penwidth=([0-9.]+)\];$)re");
  std::istringstream lines(dot);
  std::string line;
  std::size_t nodes = 0;
  std::map<std::pair<std::string, std::string>, std::string> widths;
  while (std::getline(lines, line)) {
    std::smatch m;
    if (std::regex_match(line, m, edge_re))
      widths[{m[1], m[2]}] = m[4];
    else if (std::regex_match(line, node_re))
      ++nodes;
  }
  EXPECT_EQ(nodes, 5u);
  ASSERT_EQ(widths.size(), 5u);
  EXPECT_EQ((widths[{"1", "2"}]), "10");
  EXPECT_EQ((widths[{"3", "4"}]), "10");
  EXPECT_EQ((widths[{"0", "1"}]), "1");
  EXPECT_NE(dot.find("Root\\noriginal"), std::string::npos);

  auto plain = render_dot(g, Tests{});
  EXPECT_EQ(plain.find("penwidth=10"), std::string::npos);
}

TEST(RenderDot, EscapesQuotes) {
  KillMatrix kill({"t\"1"}, {"m\"1"}, std::vector<std::vector<int>>{{1}});
  auto dot = render_dot(build_mdg(kill, Tests{}), Tests{});
  EXPECT_NE(dot.find("m\\\"1"), std::string::npos);
  EXPECT_NE(dot.find("t\\\"1"), std::string::npos);
}

class MdgProperties : public ::testing::TestWithParam<int> {};

TEST_P(MdgProperties, StructuralInvariants) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = dim(rng), m = dim(rng) + 2;
    auto table = testing::random_table(rng, n, m, 0.35);
    auto kill = testing::kill_from(table);
    auto faults = testing::random_permutation(rng, n);
    faults.resize(n / 2);
    auto g = build_mdg(kill, faults);

    // Node partition of M' by full-suite d-vector.
    Tests all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::size_t members = 0;
    std::set<std::set<std::size_t>> kill_sets;
    for (const auto& node : g.nodes) {
      members += node.members.size();
      ASSERT_TRUE(kill_sets.insert(as_set(node.kill_set)).second);
      for (auto x : node.members)
        ASSERT_EQ(testing::oracle::dvec(table, all, x == kOriginal ? m : x), testing::oracle::dvec(table, all, node.members[0] == kOriginal ? m : node.members[0]));
    }
    ASSERT_EQ(members, m + 1);
    ASSERT_TRUE(as_set(g.nodes[g.root].kill_set).empty());
    ASSERT_EQ(g.nodes[g.root].members.front(), kOriginal);

    // Edges are exactly the covering pairs of the strict-subset order.
    std::set<std::pair<std::size_t, std::size_t>> covers;
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
      for (std::size_t b = 0; b < g.nodes.size(); ++b) {
        auto ka = as_set(g.nodes[a].kill_set), kb = as_set(g.nodes[b].kill_set);
        if (!proper_subset(ka, kb)) continue;
        bool between = false;
        for (std::size_t z = 0; z < g.nodes.size() && !between; ++z) {
          auto kz = as_set(g.nodes[z].kill_set);
          between = proper_subset(ka, kz) && proper_subset(kz, kb);
        }
        if (!between) covers.insert({a, b});
      }
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges) {
      edges.insert({e.from, e.to});
      std::set<std::size_t> diff;
      auto kf = as_set(g.nodes[e.from].kill_set), kt = as_set(g.nodes[e.to].kill_set);
      std::set_difference(kt.begin(), kt.end(), kf.begin(), kf.end(), std::inserter(diff, diff.end()));
      ASSERT_EQ(std::set<std::size_t>(e.tests.begin(), e.tests.end()), diff);
      ASSERT_GE(e.fault_fraction, 0.0);
      ASSERT_LE(e.fault_fraction, 1.0);
      ASSERT_NE(e.to, g.root);
    }
    ASSERT_EQ(edges, covers);

    // Reachability from Root, chain consistency for every reachable pair.
    for (std::size_t y = 0; y < g.nodes.size(); ++y) {
      ASSERT_TRUE(g.reachable(g.root, y));
      for (std::size_t x = 0; x < g.nodes.size(); ++x)
        if (g.reachable(x, y)) ASSERT_TRUE(chain_consistency(g, x, y));
    }

    // Tests on Root's outgoing edges kill every mutant outside Root.
    std::set<std::size_t> root_tests;
    for (const auto& e : g.edges)
      if (e.from == g.root) root_tests.insert(e.tests.begin(), e.tests.end());
    Tests sufficient(root_tests.begin(), root_tests.end());
    for (std::size_t k = 1; k < g.nodes.size(); ++k)
      for (auto x : g.nodes[k].members) ASSERT_TRUE(kills(kill, sufficient, x));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, MdgProperties, ::testing::Values(1, 2, 3, 4, 5));

}  // namespace
}  // namespace mutprio
