#include "mutprio/mdg.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include "mutprio/adequacy.hpp"

namespace mutprio {

std::vector<std::size_t> Mdg::successors(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const auto& e : edges)
    if (e.from == node) out.push_back(e.to);
  return out;
}

bool Mdg::reachable(std::size_t from, std::size_t to) const {
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (auto w : successors(v))
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return false;
}

double fault_fraction(std::span<const std::size_t> tests, std::span<const std::size_t> fault_tests) {
  if (tests.empty()) return 0.0;
  std::size_t hits = 0;
  for (auto t : tests)
    if (std::find(fault_tests.begin(), fault_tests.end(), t) != fault_tests.end()) ++hits;
  return static_cast<double>(hits) / static_cast<double>(tests.size());
}

double edge_penwidth(double fraction) { return 1.0 + 9.0 * fraction; }

Mdg build_mdg(const KillMatrix& kill, std::span<const std::size_t> fault_tests) {
  for (auto t : fault_tests)
    if (t >= kill.num_tests()) throw Error(ErrorKind::OutOfRange, "fault-detecting test index out of range");

  std::vector<std::size_t> all(kill.num_tests());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto state = distinguishment_state(kill, all);

  Mdg mdg;
  mdg.test_names = kill.test_names();
  mdg.mutant_names = kill.column_names();
  std::vector<MdgNode> others;
  for (auto& members : state.classes) {
    MdgNode node;
    node.kill_set = members.front() == kOriginal ? Bitset(kill.num_tests()) : kill.column(members.front());
    node.members = std::move(members);
    if (node.members.front() == kOriginal)
      mdg.nodes.insert(mdg.nodes.begin(), std::move(node));
    else
      others.push_back(std::move(node));
  }
  std::stable_sort(others.begin(), others.end(), [](const MdgNode& a, const MdgNode& b) {
    const auto ca = a.kill_set.count();
    const auto cb = b.kill_set.count();
    if (ca != cb) return ca < cb;
    return a.members.front() < b.members.front();
  });
  std::move(others.begin(), others.end(), std::back_inserter(mdg.nodes));
  mdg.root = 0;

  // Covers of v: maximal proper subsets. Scanning candidates by decreasing
  // size, u is a cover iff no accepted cover contains it.
  std::vector<std::size_t> counts(mdg.nodes.size());
  for (std::size_t i = 0; i < mdg.nodes.size(); ++i) counts[i] = mdg.nodes[i].kill_set.count();
  for (std::size_t v = 1; v < mdg.nodes.size(); ++v) {
    std::vector<std::size_t> below;
    for (std::size_t u = 0; u < mdg.nodes.size(); ++u)
      if (u != v && counts[u] < counts[v] && mdg.nodes[u].kill_set.is_subset_of(mdg.nodes[v].kill_set)) below.push_back(u);
    std::stable_sort(below.begin(), below.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
    std::vector<std::size_t> covers;
    for (auto u : below) {
      const bool covered = std::any_of(covers.begin(), covers.end(), [&](std::size_t c) {
        return mdg.nodes[u].kill_set.is_subset_of(mdg.nodes[c].kill_set);
      });
      if (!covered) covers.push_back(u);
    }
    for (auto u : covers) {
      MdgEdge edge;
      edge.from = u;
      edge.to = v;
      Bitset diff = mdg.nodes[v].kill_set;
      diff.subtract(mdg.nodes[u].kill_set);
      edge.tests = diff.indices();
      edge.fault_fraction = fault_fraction(edge.tests, fault_tests);
      mdg.edges.push_back(std::move(edge));
    }
  }
  std::sort(mdg.edges.begin(), mdg.edges.end(),
            [](const MdgEdge& a, const MdgEdge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
  return mdg;
}

bool chain_consistency(const Mdg& mdg, std::size_t x, std::size_t y) {
  if (x >= mdg.nodes.size() || y >= mdg.nodes.size()) throw Error(ErrorKind::OutOfRange, "node index out of range");
  if (!mdg.reachable(x, y)) throw Error(ErrorKind::InvalidArgument, "target node is not reachable from source node");
  const std::size_t tests = mdg.nodes[x].kill_set.size();

  // unions[v] = distinct label unions over all x -> v paths. Nodes are in a
  // topological order (kill-set size is strictly increasing along edges).
  std::vector<std::size_t> order(mdg.nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mdg.nodes[a].kill_set.count() < mdg.nodes[b].kill_set.count(); });
  std::vector<std::set<Bitset>> unions(mdg.nodes.size());
  unions[x].insert(Bitset(tests));
  for (auto v : order) {
    if (unions[v].empty()) continue;
    for (const auto& e : mdg.edges) {
      if (e.from != v) continue;
      for (const auto& u : unions[v]) {
        Bitset next = u;
        for (auto t : e.tests) next.set(t);
        unions[e.to].insert(std::move(next));
      }
    }
  }
  Bitset expected = mdg.nodes[y].kill_set;
  expected.subtract(mdg.nodes[x].kill_set);
  return std::all_of(unions[y].begin(), unions[y].end(), [&](const Bitset& u) { return u == expected; });
}

namespace {

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string format_width(double w) {
  std::ostringstream os;
  os.precision(6);
  os << w;
  return os.str();
}

}  // namespace

std::string render_dot(const Mdg& mdg, std::span<const std::size_t> fault_tests) {
  std::ostringstream out;
  out << "digraph mdg {\n";
  for (std::size_t i = 0; i < mdg.nodes.size(); ++i) {
    std::string label = i == mdg.root ? "Root\\n" : "";
    bool first = true;
    for (auto m : mdg.nodes[i].members) {
      if (!first) label += ", ";
      label += m == kOriginal ? "original" : escape(mdg.mutant_names[m]);
      first = false;
    }
    out << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& e : mdg.edges) {
    std::string label;
    for (std::size_t k = 0; k < e.tests.size(); ++k) {
      if (k) label += ",";
      label += escape(mdg.test_names[e.tests[k]]);
    }
    const double width = edge_penwidth(fault_fraction(e.tests, fault_tests));
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << label << "\", penwidth=" << format_width(width) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mutprio
