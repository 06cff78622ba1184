#include "mutprio/adequacy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace mutprio {

namespace {

void check_tests(const KillMatrix& kill, std::span<const std::size_t> tests) {
  for (auto t : tests)
    if (t >= kill.num_tests()) throw Error(ErrorKind::OutOfRange, "test index " + std::to_string(t) + " out of range");
}

void check_mutant(const KillMatrix& kill, std::size_t mutant) {
  if (mutant != kOriginal && mutant >= kill.num_mutants())
    throw Error(ErrorKind::OutOfRange, "mutant index " + std::to_string(mutant) + " out of range");
}

// Members in refiner-local numbering use num_mutants() for the original.
std::vector<std::size_t> to_public(std::span<const std::uint32_t> members, std::uint32_t original) {
  std::vector<std::size_t> out;
  out.reserve(members.size());
  bool has_original = false;
  for (auto m : members) {
    if (m == original)
      has_original = true;
    else
      out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  if (has_original) out.insert(out.begin(), kOriginal);
  return out;
}

}  // namespace

const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::OriginalEquivalent: return "original-equivalent";
    case GroupKind::Duplicated: return "duplicated";
    case GroupKind::Singleton: return "singleton";
  }
  return "unknown";
}

const MutantGroup& MutantGroupReport::original_group() const {
  for (const auto& g : groups)
    if (!g.members.empty() && g.members.front() == kOriginal) return g;
  throw Error(ErrorKind::InvalidArgument, "report has no group containing the original program");
}

std::vector<std::size_t> MutantGroupReport::equivalent_mutants() const {
  const auto& members = original_group().members;
  return {members.begin() + 1, members.end()};
}

DVector dvector(const KillMatrix& kill, std::span<const std::size_t> tests, std::size_t mutant) {
  check_tests(kill, tests);
  check_mutant(kill, mutant);
  DVector v;
  v.bits.reserve(tests.size());
  for (auto t : tests) v.bits.push_back(mutant != kOriginal && kill.at(t, mutant) ? 1 : 0);
  return v;
}

bool kills(const KillMatrix& kill, std::span<const std::size_t> tests, std::size_t mutant) {
  check_tests(kill, tests);
  check_mutant(kill, mutant);
  if (mutant == kOriginal) return false;
  return std::any_of(tests.begin(), tests.end(), [&](std::size_t t) { return kill.at(t, mutant); });
}

DistinguishmentState distinguishment_state(const KillMatrix& kill, std::span<const std::size_t> tests) {
  check_tests(kill, tests);
  PartitionRefiner refiner(kill);
  for (auto t : tests) refiner.refine(t);
  return refiner.state();
}

bool is_k_adequate(const KillMatrix& kill, std::span<const std::size_t> tests) {
  check_tests(kill, tests);
  Bitset killed(kill.num_mutants());
  for (auto t : tests) killed |= kill.row(t);
  return killed.count() == kill.num_mutants();
}

bool is_d_adequate(const KillMatrix& kill, std::span<const std::size_t> tests) {
  check_tests(kill, tests);
  PartitionRefiner refiner(kill);
  for (auto t : tests) refiner.refine(t);
  return refiner.unique_count() == refiner.universe_size();
}

MutantGroupReport indistinguishable_groups(const KillMatrix& kill) {
  std::vector<std::size_t> all(kill.num_tests());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto state = distinguishment_state(kill, all);

  MutantGroupReport report;
  for (auto& members : state.classes) {
    MutantGroup group;
    if (members.front() == kOriginal)
      group.kind = GroupKind::OriginalEquivalent;
    else if (members.size() >= 2)
      group.kind = GroupKind::Duplicated;
    else
      group.kind = GroupKind::Singleton;
    group.members = std::move(members);
    report.groups.push_back(std::move(group));
  }
  return report;
}

PartitionRefiner::PartitionRefiner(const KillMatrix& kill)
    : kill_(&kill), original_(static_cast<std::uint32_t>(kill.num_mutants())) {
  order_.resize(kill.num_mutants() + 1);
  std::iota(order_.begin(), order_.end(), std::uint32_t{0});
  scratch_.reserve(order_.size());
  reset();
}

void PartitionRefiner::reset() {
  std::iota(order_.begin(), order_.end(), std::uint32_t{0});
  open_.clear();
  open_.emplace_back(0, static_cast<std::uint32_t>(order_.size()));
  unique_ = 0;
}

void PartitionRefiner::refine(std::size_t test) {
  scratch_ranges_.clear();
  for (auto [begin, end] : open_) {
    // Stable split: zeros stay in place, ones are buffered and appended.
    scratch_.clear();
    std::uint32_t write = begin;
    for (std::uint32_t k = begin; k < end; ++k) {
      auto member = order_[k];
      if (bit(test, member))
        scratch_.push_back(member);
      else
        order_[write++] = member;
    }
    std::copy(scratch_.begin(), scratch_.end(), order_.begin() + write);
    const std::uint32_t zeros = write - begin;
    const std::uint32_t ones = end - write;
    if (zeros == 1) ++unique_;
    if (ones == 1) ++unique_;
    if (zeros >= 2) scratch_ranges_.emplace_back(begin, write);
    if (ones >= 2) scratch_ranges_.emplace_back(write, end);
  }
  open_.swap(scratch_ranges_);
}

std::size_t PartitionRefiner::gain(std::size_t test) const {
  const Bitset& row = kill_->row(test);
  std::size_t total = 0;
  for (auto [begin, end] : open_) {
    std::uint32_t ones = 0;
    for (std::uint32_t k = begin; k < end; ++k) {
      auto member = order_[k];
      ones += (member != original_ && row.test(member)) ? 1U : 0U;
    }
    const std::uint32_t zeros = (end - begin) - ones;
    if (ones == 0 || zeros == 0) continue;
    total += (ones == 1 ? 1U : 0U) + (zeros == 1 ? 1U : 0U);
  }
  return total;
}

DistinguishmentState PartitionRefiner::state() const {
  DistinguishmentState s;
  s.unique_count = unique_;
  std::size_t next_open = 0;
  std::size_t k = 0;
  while (k < order_.size()) {
    if (next_open < open_.size() && open_[next_open].first == k) {
      auto [begin, end] = open_[next_open++];
      s.classes.push_back(to_public(std::span(order_).subspan(begin, end - begin), original_));
      k = end;
    } else {
      s.classes.push_back(to_public(std::span(order_).subspan(k, 1), original_));
      ++k;
    }
  }
  auto key = [](const std::vector<std::size_t>& g) { return std::pair(g.front() != kOriginal, g.front()); };
  std::sort(s.classes.begin(), s.classes.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return s;
}

}  // namespace mutprio
