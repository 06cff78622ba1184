#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "mutprio/model.hpp"

namespace mutprio {

// Stands for the original program p_o wherever a mutant index is expected.
// Its d-vector is all zeros.
inline constexpr std::size_t kOriginal = std::numeric_limits<std::size_t>::max();

struct DVector {
  std::vector<std::uint8_t> bits;
  friend bool operator==(const DVector&, const DVector&) = default;
};

// Partition of M' = mutants + original by d-vector over the selected tests.
// Groups list mutant indices ascending with kOriginal first when present;
// groups are ordered by their first member.
struct DistinguishmentState {
  std::vector<std::vector<std::size_t>> classes;
  std::size_t unique_count = 0;
};

enum class GroupKind { OriginalEquivalent, Duplicated, Singleton };

struct MutantGroup {
  std::vector<std::size_t> members;  // may contain kOriginal
  GroupKind kind = GroupKind::Singleton;
};

struct MutantGroupReport {
  std::vector<MutantGroup> groups;

  const MutantGroup& original_group() const;
  // Mutants sharing the original's full-suite d-vector (the equivalent set).
  std::vector<std::size_t> equivalent_mutants() const;
};

const char* to_string(GroupKind kind);

DVector dvector(const KillMatrix& kill, std::span<const std::size_t> tests, std::size_t mutant);
bool kills(const KillMatrix& kill, std::span<const std::size_t> tests, std::size_t mutant);
DistinguishmentState distinguishment_state(const KillMatrix& kill, std::span<const std::size_t> tests);
bool is_k_adequate(const KillMatrix& kill, std::span<const std::size_t> tests);
bool is_d_adequate(const KillMatrix& kill, std::span<const std::size_t> tests);
MutantGroupReport indistinguishable_groups(const KillMatrix& kill);

// Incremental partition refinement over M'. Each refine(t) splits every open
// (non-singleton) class by the kill bit of test t. Singletons never split
// again, so only open classes are stored and scanned.
class PartitionRefiner {
 public:
  explicit PartitionRefiner(const KillMatrix& kill);

  void reset();
  void refine(std::size_t test);
  // uniqueCount(selected + test) - uniqueCount(selected), without refining.
  std::size_t gain(std::size_t test) const;

  std::size_t unique_count() const noexcept { return unique_; }
  std::size_t universe_size() const noexcept { return order_.size(); }
  bool fully_distinguished() const noexcept { return open_.empty(); }

  DistinguishmentState state() const;

 private:
  bool bit(std::size_t test, std::uint32_t member) const {
    return member != original_ && kill_->at(test, member);
  }

  const KillMatrix* kill_;
  std::uint32_t original_;
  std::vector<std::uint32_t> order_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> open_;  // [begin, end), sorted by begin
  std::vector<std::pair<std::uint32_t, std::uint32_t>> scratch_ranges_;
  std::vector<std::uint32_t> scratch_;
  std::size_t unique_ = 0;
};

}  // namespace mutprio
