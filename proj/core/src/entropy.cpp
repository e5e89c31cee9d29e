#include "semtoken/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semtoken {

double span_entropy(const FingerprintMatrix& fp, std::size_t begin, std::size_t end) {
  if (begin >= end) throw std::invalid_argument("span_entropy needs at least one row");
  if (end > fp.rows()) throw std::out_of_range("span_entropy range exceeds matrix");
  const std::size_t m = end - begin;
  if (m == 1) return 0.0;

  // Rows are centred on the first member before averaging so that identical
  // rows give exactly zero and a shared offset never enters the sums.
  const std::size_t d = fp.dim();
  const auto anchor = fp.row(begin);
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = begin + 1; i < end; ++i) {
    const auto r = fp.row(i);
    for (std::size_t c = 0; c < d; ++c) mean[c] += r[c] - anchor[c];
  }
  for (double& x : mean) x /= static_cast<double>(m);

  double total = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const auto r = fp.row(i);
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = (r[c] - anchor[c]) - mean[c];
      total += dev * dev;
    }
  }
  return std::max(0.0, total / static_cast<double>(m));
}

double span_entropy(const FingerprintMatrix& rows) { return span_entropy(rows, 0, rows.rows()); }

void score_spans(std::vector<Span>& spans, const FingerprintMatrix& fp) {
  for (Span& s : spans) s.entropy = span_entropy(fp, s.begin, s.end);
}

Granularity assign_granularity(double entropy, double delta) {
  return entropy > delta ? Granularity::kFine : Granularity::kCoarse;
}

double resolve_delta(const DeltaPolicy& policy, std::span<const double> entropies) {
  if (policy.kind == DeltaPolicy::Kind::kAbsolute) return policy.value;
  if (!(policy.value >= 0.0 && policy.value <= 100.0)) {
    throw std::invalid_argument("percentile must lie in [0, 100]");
  }
  if (entropies.empty()) throw std::invalid_argument("percentile of an empty entropy list");

  std::vector<double> sorted(entropies.begin(), entropies.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = policy.value / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace semtoken
