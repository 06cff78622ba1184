#include "mutprio/adequacy.hpp"

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

namespace mutprio {
namespace {

using testing::fix_a;
using testing::kFixA;
namespace oracle = testing::oracle;

using Tests = std::vector<std::size_t>;

// The reconstructed working example must satisfy every stated constraint
// before any other test leans on it.
TEST(WorkingExample, SatisfiesQuotedConstraints) {
  // t1 kills all four mutants.
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(kFixA[0][j], 1);
  // {t1,t2,t3} gives all five programs unique d-vectors.
  EXPECT_EQ(oracle::unique_count(kFixA, {0, 1, 2}), 5u);
  // Root -> A labelled t1: some mutant is killed by t1 alone.
  bool t1_only = false;
  for (std::size_t j = 0; j < 4; ++j) t1_only = t1_only || (oracle::dvec(kFixA, {0, 1, 2}, j) == std::vector<int>{1, 0, 0});
  EXPECT_TRUE(t1_only);
  // A -> B labelled t3: some mutant is killed by exactly {t1, t3}.
  bool t1_t3 = false;
  for (std::size_t j = 0; j < 4; ++j) t1_t3 = t1_t3 || (oracle::dvec(kFixA, {0, 1, 2}, j) == std::vector<int>{1, 0, 1});
  EXPECT_TRUE(t1_t3);
}

TEST(DVector, WorkingExample) {
  auto kill = fix_a();
  EXPECT_EQ(dvector(kill, Tests{0, 1, 2}, 3).bits, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(dvector(kill, Tests{1}, 0).bits, (std::vector<std::uint8_t>{0}));
  EXPECT_EQ(dvector(kill, Tests{2, 0}, 1).bits, (std::vector<std::uint8_t>{1, 1}));
}

TEST(DVector, OriginalIsAllZero) {
  auto kill = fix_a();
  EXPECT_EQ(dvector(kill, Tests{0, 1, 2}, kOriginal).bits, (std::vector<std::uint8_t>{0, 0, 0}));
}

TEST(DVector, OutOfRange) {
  auto kill = fix_a();
  EXPECT_THROW(dvector(kill, Tests{3}, 0), Error);
  EXPECT_THROW(dvector(kill, Tests{0}, 4), Error);
}

TEST(Kills, WorkingExample) {
  auto kill = fix_a();
  for (std::size_t m = 0; m < 4; ++m) EXPECT_TRUE(kills(kill, Tests{0}, m));
  for (std::size_t m = 0; m < 4; ++m) EXPECT_FALSE(kills(kill, Tests{}, m));
  EXPECT_FALSE(kills(kill, Tests{1, 2}, 0));
  EXPECT_FALSE(kills(kill, Tests{0, 1, 2}, kOriginal));
}

TEST(DistinguishmentState, WorkingExample) {
  auto kill = fix_a();
  auto full = distinguishment_state(kill, Tests{0, 1, 2});
  EXPECT_EQ(full.unique_count, 5u);
  EXPECT_EQ(full.classes.size(), 5u);

  auto none = distinguishment_state(kill, Tests{});
  EXPECT_EQ(none.unique_count, 0u);
  ASSERT_EQ(none.classes.size(), 1u);
  EXPECT_EQ(none.classes[0], (std::vector<std::size_t>{kOriginal, 0, 1, 2, 3}));

  auto t1 = distinguishment_state(kill, Tests{0});
  EXPECT_EQ(t1.unique_count, 1u);
  ASSERT_EQ(t1.classes.size(), 2u);
  EXPECT_EQ(t1.classes[0], (std::vector<std::size_t>{kOriginal}));
  EXPECT_EQ(t1.classes[1], (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(Adequacy, WorkingExample) {
  auto kill = fix_a();
  EXPECT_TRUE(is_k_adequate(kill, Tests{0}));
  EXPECT_FALSE(is_k_adequate(kill, Tests{1}));
  EXPECT_TRUE(is_d_adequate(kill, Tests{0, 1, 2}));
  EXPECT_FALSE(is_d_adequate(kill, Tests{0}));
}

TEST(Adequacy, EquivalentMutantBlocksKAdequacy) {
  auto kill = testing::kill_from({{1, 0}, {1, 0}});
  EXPECT_FALSE(is_k_adequate(kill, Tests{0, 1}));
}

TEST(Adequacy, SingleMutantSingleTest) {
  auto kill = testing::kill_from({{1}});
  EXPECT_TRUE(is_d_adequate(kill, Tests{0}));
  EXPECT_TRUE(is_k_adequate(kill, Tests{0}));
}

TEST(IndistinguishableGroups, DuplicatedColumns) {
  auto kill = testing::kill_from({{1, 1}, {0, 0}});
  auto report = indistinguishable_groups(kill);
  ASSERT_EQ(report.groups.size(), 2u);
  EXPECT_EQ(report.groups[0].members, (std::vector<std::size_t>{kOriginal}));
  EXPECT_EQ(report.groups[0].kind, GroupKind::OriginalEquivalent);
  EXPECT_EQ(report.groups[1].members, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(report.groups[1].kind, GroupKind::Duplicated);
  EXPECT_TRUE(report.equivalent_mutants().empty());
}

TEST(IndistinguishableGroups, EquivalentMutantJoinsOriginal) {
  auto kill = testing::kill_from({{1, 0}, {0, 0}});
  auto report = indistinguishable_groups(kill);
  EXPECT_EQ(report.original_group().members, (std::vector<std::size_t>{kOriginal, 1}));
  EXPECT_EQ(report.original_group().kind, GroupKind::OriginalEquivalent);
  EXPECT_EQ(report.equivalent_mutants(), std::vector<std::size_t>{1});
}

TEST(IndistinguishableGroups, WorkingExampleAllSingletons) {
  auto report = indistinguishable_groups(fix_a());
  ASSERT_EQ(report.groups.size(), 5u);
  for (std::size_t g = 1; g < 5; ++g) EXPECT_EQ(report.groups[g].kind, GroupKind::Singleton);
}

TEST(PartitionRefiner, GainMatchesRefinement) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto table = testing::random_table(rng, 8, 10, 0.35);
    auto kill = testing::kill_from(table);
    PartitionRefiner refiner(kill);
    for (auto t : testing::random_permutation(rng, 8)) {
      const auto before = refiner.unique_count();
      const auto predicted = refiner.gain(t);
      refiner.refine(t);
      ASSERT_EQ(refiner.unique_count() - before, predicted);
    }
  }
}

// Invariants over random matrices, checked against the pairwise oracle.
class AdequacyProperties : public ::testing::TestWithParam<int> {};

TEST_P(AdequacyProperties, AgreeWithBruteForce) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = dim(rng);
    const std::size_t m = dim(rng);
    auto table = testing::random_table(rng, n, m, 0.4);
    auto kill = testing::kill_from(table);
    auto order = testing::random_permutation(rng, n);
    std::uniform_int_distribution<std::size_t> len(0, n);
    Tests tests(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len(rng)));

    auto state = distinguishment_state(kill, tests);
    ASSERT_EQ(state.unique_count, oracle::unique_count(table, tests));
    ASSERT_EQ(is_k_adequate(kill, tests), oracle::k_adequate(table, tests));
    ASSERT_EQ(is_d_adequate(kill, tests), oracle::d_adequate(table, tests));
    if (is_d_adequate(kill, tests)) ASSERT_TRUE(is_k_adequate(kill, tests));

    // Partition covers M' exactly once, and is independent of test order.
    std::size_t members = 0;
    for (const auto& c : state.classes) members += c.size();
    ASSERT_EQ(members, m + 1);
    Tests reversed(tests.rbegin(), tests.rend());
    auto again = distinguishment_state(kill, reversed);
    ASSERT_EQ(again.classes, state.classes);
    ASSERT_EQ(again.unique_count, state.unique_count);

    // Adding a test never lowers uniqueCount nor un-kills a mutant.
    if (tests.size() < n) {
      Tests more = tests;
      more.push_back(order[tests.size()]);
      ASSERT_GE(distinguishment_state(kill, more).unique_count, state.unique_count);
      for (std::size_t j = 0; j < m; ++j)
        if (kills(kill, tests, j)) ASSERT_TRUE(kills(kill, more, j));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, AdequacyProperties, ::testing::Values(1, 2, 3, 4, 5));

}  // namespace
}  // namespace mutprio
