#include "mutprio/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

namespace mutprio {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::RaggedRow: return "RaggedRow";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidCell: return "InvalidCell";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::TestSetMismatch: return "TestSetMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingInput: return "MissingInput";
    case ErrorKind::UndetectedFault: return "UndetectedFault";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

void check_names(const std::vector<std::string>& names, std::string_view what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& name : names) {
    if (name.empty()) throw Error(ErrorKind::Parse, "empty " + std::string(what) + " name");
    if (!seen.insert(name).second)
      throw Error(ErrorKind::DuplicateName, "duplicate " + std::string(what) + " name '" + name + "'");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Reads non-blank lines; line numbers are 1-based for diagnostics.
struct CsvReader {
  explicit CsvReader(std::istream& stream) : in(stream) {}

  std::istream& in;
  std::size_t line_no = 0;
  std::string buffer;

  bool next(std::vector<std::string_view>& fields) {
    while (std::getline(in, buffer)) {
      ++line_no;
      if (trim(buffer).empty()) continue;
      if (line_no == 1 && buffer.starts_with("\xEF\xBB\xBF")) buffer.erase(0, 3);
      fields = split(buffer);
      return true;
    }
    return false;
  }
};

template <typename Matrix>
Matrix parse_bool_matrix(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string_view> fields;
  if (!reader.next(fields)) throw Error(ErrorKind::EmptyMatrix, "matrix file is empty");
  std::vector<std::string> columns(fields.begin() + 1, fields.end());
  if (columns.empty()) throw Error(ErrorKind::EmptyMatrix, "matrix header has no columns");
  check_names(columns, "column");

  std::vector<std::string> tests;
  std::vector<Bitset> rows;
  while (reader.next(fields)) {
    if (fields.size() != columns.size() + 1)
      throw Error(ErrorKind::RaggedRow, "line " + std::to_string(reader.line_no) + ": expected " +
                                            std::to_string(columns.size() + 1) + " fields, got " +
                                            std::to_string(fields.size()));
    tests.emplace_back(fields[0]);
    Bitset row(columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      auto cell = fields[j + 1];
      if (cell == "1")
        row.set(j);
      else if (cell != "0")
        throw Error(ErrorKind::InvalidCell,
                    "line " + std::to_string(reader.line_no) + ": cell '" + std::string(cell) + "' is not 0 or 1");
    }
    rows.push_back(std::move(row));
  }
  return Matrix(std::move(tests), std::move(columns), std::move(rows));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

BoolMatrix::BoolMatrix(std::vector<std::string> test_names, std::vector<std::string> column_names,
                       std::vector<Bitset> rows) {
  if (test_names.empty() || column_names.empty()) throw Error(ErrorKind::EmptyMatrix, "matrix needs at least one test and one column");
  if (rows.size() != test_names.size()) throw Error(ErrorKind::RaggedRow, "row count does not match test count");
  for (const auto& row : rows)
    if (row.size() != column_names.size()) throw Error(ErrorKind::RaggedRow, "row width does not match column count");
  check_names(test_names, "test");
  check_names(column_names, "column");

  tests_.reserve(test_names.size());
  for (std::size_t i = 0; i < test_names.size(); ++i) tests_.push_back({std::move(test_names[i]), i});
  columns_.reserve(column_names.size());
  for (std::size_t j = 0; j < column_names.size(); ++j) columns_.push_back({std::move(column_names[j]), j});
  rows_ = std::move(rows);
}

BoolMatrix::BoolMatrix(std::vector<std::string> test_names, std::vector<std::string> column_names,
                       const std::vector<std::vector<int>>& cells)
    : BoolMatrix(std::move(test_names), column_names, [&] {
        std::vector<Bitset> rows;
        for (const auto& r : cells) {
          if (r.size() != column_names.size()) throw Error(ErrorKind::RaggedRow, "row width does not match column count");
          Bitset row(r.size());
          for (std::size_t j = 0; j < r.size(); ++j) {
            if (r[j] != 0 && r[j] != 1) throw Error(ErrorKind::InvalidCell, "cell is not 0 or 1");
            row.assign(j, r[j] == 1);
          }
          rows.push_back(std::move(row));
        }
        return rows;
      }()) {}

Bitset BoolMatrix::column(std::size_t column) const {
  Bitset out(num_tests());
  for (std::size_t i = 0; i < num_tests(); ++i) out.assign(i, rows_[i].test(column));
  return out;
}

std::vector<std::string> BoolMatrix::test_names() const {
  std::vector<std::string> out;
  out.reserve(tests_.size());
  for (const auto& t : tests_) out.push_back(t.name);
  return out;
}

std::vector<std::string> BoolMatrix::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const auto& c : columns_) out.push_back(c.name);
  return out;
}

std::size_t BoolMatrix::test_index(std::string_view name) const {
  for (const auto& t : tests_)
    if (t.name == name) return t.index;
  throw Error(ErrorKind::OutOfRange, "unknown test '" + std::string(name) + "'");
}

std::size_t BoolMatrix::column_index(std::string_view name) const {
  for (const auto& c : columns_)
    if (c.name == name) return c.index;
  throw Error(ErrorKind::OutOfRange, "unknown column '" + std::string(name) + "'");
}

bool Ordering::is_permutation_of(std::size_t n) const {
  if (sequence.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto t : sequence) {
    if (t >= n || seen[t]) return false;
    seen[t] = true;
  }
  return true;
}

void Ordering::validate(std::size_t n) const {
  if (!is_permutation_of(n))
    throw Error(ErrorKind::InvalidArgument, "ordering is not a permutation of " + std::to_string(n) + " tests");
}

AnyMatrix parse_matrix(std::istream& in, MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Kill: return parse_kill_matrix(in);
    case MatrixKind::Coverage: return parse_coverage_matrix(in);
    case MatrixKind::Fault: return parse_fault_matrix(in);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown matrix kind");
}

KillMatrix parse_kill_matrix(std::istream& in) { return parse_bool_matrix<KillMatrix>(in); }
CoverageMatrix parse_coverage_matrix(std::istream& in) { return parse_bool_matrix<CoverageMatrix>(in); }
FaultMatrix parse_fault_matrix(std::istream& in) { return parse_bool_matrix<FaultMatrix>(in); }

CostVector parse_cost_vector(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string_view> fields;
  if (!reader.next(fields)) throw Error(ErrorKind::EmptyMatrix, "cost file is empty");
  if (fields.size() != 2) throw Error(ErrorKind::Parse, "cost header must be `test,cost`");
  CostVector costs;
  std::vector<std::string> names;
  while (reader.next(fields)) {
    if (fields.size() != 2) throw Error(ErrorKind::RaggedRow, "line " + std::to_string(reader.line_no) + ": expected 2 fields");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), value);
    if (ec != std::errc() || ptr != fields[1].data() + fields[1].size())
      throw Error(ErrorKind::InvalidCell, "line " + std::to_string(reader.line_no) + ": bad cost '" + std::string(fields[1]) + "'");
    if (!(value > 0.0) || !std::isfinite(value))
      throw Error(ErrorKind::InvalidArgument, "line " + std::to_string(reader.line_no) + ": cost must be positive");
    names.emplace_back(fields[0]);
    costs.tests.push_back({names.back(), costs.tests.size()});
    costs.cost.push_back(value);
  }
  if (costs.cost.empty()) throw Error(ErrorKind::EmptyMatrix, "cost file has no rows");
  check_names(names, "test");
  return costs;
}

void write_matrix(std::ostream& out, const BoolMatrix& matrix) {
  out << "test";
  for (const auto& c : matrix.columns()) out << ',' << c.name;
  out << '\n';
  for (std::size_t i = 0; i < matrix.num_tests(); ++i) {
    out << matrix.tests()[i].name;
    for (std::size_t j = 0; j < matrix.num_columns(); ++j) out << ',' << (matrix.at(i, j) ? '1' : '0');
    out << '\n';
  }
}

KillMatrix load_kill_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_kill_matrix(in);
}
CoverageMatrix load_coverage_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_coverage_matrix(in);
}
FaultMatrix load_fault_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_fault_matrix(in);
}
CostVector load_cost_vector(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_cost_vector(in);
}

Ordering parse_ordering(std::istream& in, std::span<const TestId> tests) {
  CsvReader reader(in);
  std::vector<std::string_view> fields;
  if (!reader.next(fields) || fields.size() != 2) throw Error(ErrorKind::Parse, "ordering header must be `rank,test`");
  std::vector<std::pair<long, std::size_t>> ranked;
  while (reader.next(fields)) {
    if (fields.size() != 2) throw Error(ErrorKind::RaggedRow, "line " + std::to_string(reader.line_no) + ": expected 2 fields");
    long rank = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), rank);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size())
      throw Error(ErrorKind::Parse, "line " + std::to_string(reader.line_no) + ": bad rank");
    auto it = std::find_if(tests.begin(), tests.end(), [&](const TestId& t) { return t.name == fields[1]; });
    if (it == tests.end()) throw Error(ErrorKind::TestSetMismatch, "ordering names unknown test '" + std::string(fields[1]) + "'");
    ranked.emplace_back(rank, it->index);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Ordering ordering;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    if (ranked[k].first != static_cast<long>(k + 1)) throw Error(ErrorKind::Parse, "ordering ranks must be 1..n");
    ordering.sequence.push_back(ranked[k].second);
  }
  if (!ordering.is_permutation_of(tests.size()))
    throw Error(ErrorKind::TestSetMismatch, "ordering does not cover every test exactly once");
  return ordering;
}

Ordering load_ordering(const std::filesystem::path& path, std::span<const TestId> tests) {
  auto in = open_input(path);
  auto ordering = parse_ordering(in, tests);
  ordering.provenance.technique = path.stem().string();
  return ordering;
}

void write_ordering(std::ostream& out, const Ordering& ordering, std::span<const TestId> tests) {
  out << "rank,test\n";
  for (std::size_t k = 0; k < ordering.sequence.size(); ++k) out << (k + 1) << ',' << tests[ordering.sequence[k]].name << '\n';
}

namespace {

template <typename Names>
void require_same_tests(const KillMatrix& kill, const Names& other, std::string_view what) {
  const auto& tests = kill.tests();
  bool same = tests.size() == other.size();
  for (std::size_t i = 0; same && i < tests.size(); ++i) same = tests[i].name == other[i].name;
  if (!same) throw Error(ErrorKind::TestSetMismatch, std::string(what) + " tests differ from the kill matrix tests");
}

}  // namespace

ValidationReport validate_bundle(const KillMatrix& kill, const CoverageMatrix* coverage, const FaultMatrix* faults,
                                 const CostVector* costs) {
  if (coverage) require_same_tests(kill, coverage->tests(), "coverage");
  if (faults) require_same_tests(kill, faults->tests(), "fault");
  if (costs) require_same_tests(kill, costs->tests, "cost");

  ValidationReport report;
  Bitset killed(kill.num_mutants());
  for (std::size_t i = 0; i < kill.num_tests(); ++i) {
    if (kill.row(i).none()) report.zero_kill_tests.push_back(kill.tests()[i].name);
    killed |= kill.row(i);
  }
  for (const auto& m : kill.mutants())
    if (!killed.test(m.index)) report.unkilled_mutants.push_back(m.name);

  if (faults) {
    Bitset detected(faults->num_faults());
    for (std::size_t i = 0; i < faults->num_tests(); ++i) detected |= faults->row(i);
    for (const auto& f : faults->columns())
      if (!detected.test(f.index)) report.undetected_faults.push_back(f.name);
  }
  return report;
}

}  // namespace mutprio
