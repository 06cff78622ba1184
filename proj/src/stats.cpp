#include "mutprio/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mutprio/model.hpp"

namespace mutprio {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Superior: return "superior";
    case Outcome::Equal: return "equal";
    case Outcome::Inferior: return "inferior";
  }
  return "unknown";
}

namespace {

void require_nonempty(const SampleSet& s) {
  if (s.values.empty()) throw Error(ErrorKind::InvalidArgument, "sample '" + s.label + "' is empty");
}

// (wins, ties) over all |a|*|b| pairs, by merging sorted copies.
std::pair<double, double> pair_counts(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sb.begin(), sb.end());
  double wins = 0.0;
  double ties = 0.0;
  for (double x : a) {
    auto lo = std::lower_bound(sb.begin(), sb.end(), x);
    auto hi = std::upper_bound(lo, sb.end(), x);
    wins += static_cast<double>(lo - sb.begin());
    ties += static_cast<double>(hi - lo);
  }
  return {wins, ties};
}

}  // namespace

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t k = 0;
  while (k < n) {
    std::size_t end = k + 1;
    while (end < n && values[idx[end]] == values[idx[k]]) ++end;
    const double rank = (static_cast<double>(k + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = k; i < end; ++i) ranks[idx[i]] = rank;
    k = end;
  }
  return ranks;
}

MannWhitneyResult mann_whitney_u(const SampleSet& a, const SampleSet& b) {
  require_nonempty(a);
  require_nonempty(b);
  const auto [wins, ties] = pair_counts(a.values, b.values);
  MannWhitneyResult result;
  result.u = wins + 0.5 * ties;

  const double n1 = static_cast<double>(a.values.size());
  const double n2 = static_cast<double>(b.values.size());
  const double n = n1 + n2;
  std::vector<double> pooled(a.values);
  pooled.insert(pooled.end(), b.values.begin(), b.values.end());
  std::sort(pooled.begin(), pooled.end());
  double tie_term = 0.0;
  for (std::size_t k = 0; k < pooled.size();) {
    std::size_t end = k + 1;
    while (end < pooled.size() && pooled[end] == pooled[k]) ++end;
    const double t = static_cast<double>(end - k);
    tie_term += t * t * t - t;
    k = end;
  }
  const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) {
    result.p = 1.0;
    return result;
  }
  const double mean = n1 * n2 / 2.0;
  const double z = (std::abs(result.u - mean) - 0.5) / std::sqrt(variance);
  // Two-sided tail 2*(1 - Phi(z)) = erfc(z / sqrt 2).
  result.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

double a12(const SampleSet& a, const SampleSet& b) {
  require_nonempty(a);
  require_nonempty(b);
  const auto [wins, ties] = pair_counts(a.values, b.values);
  return (wins + 0.5 * ties) / (static_cast<double>(a.values.size()) * static_cast<double>(b.values.size()));
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "correlation inputs differ in length");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "correlation needs at least two points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "correlation inputs differ in length");
  auto rx = mid_ranks(x);
  auto ry = mid_ranks(y);
  return pearson(rx, ry);
}

Verdict compare(const SampleSet& a, const SampleSet& b, double alpha) {
  Verdict v;
  v.p_value = mann_whitney_u(a, b).p;
  v.a12 = a12(a, b);
  if (v.p_value < alpha && v.a12 > 0.5)
    v.outcome = Outcome::Superior;
  else if (v.p_value < alpha && v.a12 < 0.5)
    v.outcome = Outcome::Inferior;
  else
    v.outcome = Outcome::Equal;
  return v;
}

}  // namespace mutprio
