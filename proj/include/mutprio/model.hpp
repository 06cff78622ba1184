#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mutprio/bitset.hpp"

namespace mutprio {

enum class ErrorKind {
  Parse,
  RaggedRow,
  DuplicateName,
  InvalidCell,
  EmptyMatrix,
  TestSetMismatch,
  OutOfRange,
  InvalidArgument,
  MissingInput,
  UndetectedFault,
  DegenerateDenominator,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct TestId {
  std::string name;
  std::size_t index = 0;
  friend bool operator==(const TestId&, const TestId&) = default;
};

// Column of a matrix: a mutant, a covered statement, or a fault.
struct ColumnId {
  std::string name;
  std::size_t index = 0;
  friend bool operator==(const ColumnId&, const ColumnId&) = default;
};
using MutantId = ColumnId;

// Dense boolean test x column matrix. Rows are bit-packed; row order is the
// canonical test order used for all tie-breaking downstream.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  // Throws DuplicateName / EmptyMatrix / RaggedRow on invariant violations.
  BoolMatrix(std::vector<std::string> test_names, std::vector<std::string> column_names, std::vector<Bitset> rows);
  BoolMatrix(std::vector<std::string> test_names, std::vector<std::string> column_names,
             const std::vector<std::vector<int>>& cells);

  std::size_t num_tests() const noexcept { return tests_.size(); }
  std::size_t num_columns() const noexcept { return columns_.size(); }

  bool at(std::size_t test, std::size_t column) const { return rows_[test].test(column); }
  const Bitset& row(std::size_t test) const { return rows_[test]; }
  Bitset column(std::size_t column) const;

  const std::vector<TestId>& tests() const noexcept { return tests_; }
  const std::vector<ColumnId>& columns() const noexcept { return columns_; }
  std::vector<std::string> test_names() const;
  std::vector<std::string> column_names() const;

  // Index of a test by name; throws OutOfRange if absent.
  std::size_t test_index(std::string_view name) const;
  std::size_t column_index(std::string_view name) const;

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::vector<TestId> tests_;
  std::vector<ColumnId> columns_;
  std::vector<Bitset> rows_;
};

// cells[i][j] = 1 iff test i kills mutant j; column j is mutant j's d-vector.
struct KillMatrix : BoolMatrix {
  using BoolMatrix::BoolMatrix;
  std::size_t num_mutants() const noexcept { return num_columns(); }
  const std::vector<MutantId>& mutants() const noexcept { return columns(); }
};

struct CoverageMatrix : BoolMatrix {
  using BoolMatrix::BoolMatrix;
  std::size_t num_statements() const noexcept { return num_columns(); }
};

struct FaultMatrix : BoolMatrix {
  using BoolMatrix::BoolMatrix;
  std::size_t num_faults() const noexcept { return num_columns(); }
};

struct CostVector {
  std::vector<TestId> tests;
  std::vector<double> cost;

  std::size_t size() const noexcept { return cost.size(); }
};

struct Provenance {
  std::string technique;
  std::uint64_t seed = 0;
  std::string parameters;
};

// A permutation of test indices; sequence[k] is the test run at rank k+1.
struct Ordering {
  std::vector<std::size_t> sequence;
  Provenance provenance;

  std::size_t size() const noexcept { return sequence.size(); }
  bool is_permutation_of(std::size_t n) const;
  // Throws InvalidArgument unless sequence is a bijection on 0..n-1.
  void validate(std::size_t n) const;
};

enum class MatrixKind { Kill, Coverage, Fault };

using AnyMatrix = std::variant<KillMatrix, CoverageMatrix, FaultMatrix>;

AnyMatrix parse_matrix(std::istream& in, MatrixKind kind);
KillMatrix parse_kill_matrix(std::istream& in);
CoverageMatrix parse_coverage_matrix(std::istream& in);
FaultMatrix parse_fault_matrix(std::istream& in);
CostVector parse_cost_vector(std::istream& in);

void write_matrix(std::ostream& out, const BoolMatrix& matrix);

KillMatrix load_kill_matrix(const std::filesystem::path& path);
CoverageMatrix load_coverage_matrix(const std::filesystem::path& path);
FaultMatrix load_fault_matrix(const std::filesystem::path& path);
CostVector load_cost_vector(const std::filesystem::path& path);

// Ordering CSV: header `rank,test`, ranks 1..n, test names resolved against `tests`.
Ordering parse_ordering(std::istream& in, std::span<const TestId> tests);
Ordering load_ordering(const std::filesystem::path& path, std::span<const TestId> tests);
void write_ordering(std::ostream& out, const Ordering& ordering, std::span<const TestId> tests);

struct ValidationReport {
  std::vector<std::string> undetected_faults;
  std::vector<std::string> unkilled_mutants;
  std::vector<std::string> zero_kill_tests;

  bool empty() const noexcept {
    return undetected_faults.empty() && unkilled_mutants.empty() && zero_kill_tests.empty();
  }
};

// Throws TestSetMismatch when any supplied input disagrees with the kill
// matrix on test names or order. Everything else is reported, not thrown.
ValidationReport validate_bundle(const KillMatrix& kill, const CoverageMatrix* coverage = nullptr,
                                 const FaultMatrix* faults = nullptr, const CostVector* costs = nullptr);

}  // namespace mutprio
