#include "semtoken/spans.hpp"

#include <cmath>
#include <stdexcept>

#include "semtoken/embedder.hpp"

namespace semtoken {
namespace {

void check_tau(double tau) {
  if (!(tau >= -1.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [-1, 1]");
}

Span make_span(const FingerprintMatrix& fp, std::size_t begin, std::size_t end) {
  Span s;
  s.begin = begin;
  s.end = end;
  s.mean_fp.assign(fp.dim(), 0.0);
  for (std::size_t i = begin; i < end; ++i) {
    const auto r = fp.row(i);
    for (std::size_t c = 0; c < fp.dim(); ++c) s.mean_fp[c] += r[c];
  }
  const double m = static_cast<double>(end - begin);
  for (double& x : s.mean_fp) x /= m;
  return s;
}

template <typename Accept>
std::vector<Span> grow_spans(const FingerprintMatrix& fp, const SpanOptions& options,
                             Accept accept) {
  std::vector<Span> spans;
  const std::size_t n = fp.rows();
  std::size_t t = 0;
  while (t < n) {
    std::size_t j = t + 1;
    while (j < n) {
      if (options.max_width != 0 && j - t >= options.max_width) break;
      const std::size_t ref = options.linkage == SpanLinkage::kAnchor ? t : j - 1;
      if (!accept(cosine_sim(fp.row(ref), fp.row(j)))) break;
      ++j;
    }
    spans.push_back(make_span(fp, t, j));
    t = j;
  }
  return spans;
}

double bin_edge(std::size_t k, std::size_t bins) {
  return (2.0 * static_cast<double>(k)) / static_cast<double>(bins) - 1.0;
}

}  // namespace

std::vector<Span> form_spans(const FingerprintMatrix& fp, double tau, const SpanOptions& options) {
  check_tau(tau);
  return grow_spans(fp, options, [tau](double score) { return score > tau; });
}

double quantize_score(double score, std::size_t bins) {
  if (bins < 2) throw std::invalid_argument("histogram binning needs at least 2 bins");
  if (score <= -1.0) return -1.0;
  if (score >= 1.0) return 1.0;
  // smallest k with edge(k) >= score
  const double guess = std::ceil((score + 1.0) * static_cast<double>(bins) / 2.0);
  std::size_t k = guess <= 0.0 ? 0 : std::min(bins, static_cast<std::size_t>(guess));
  while (k > 0 && bin_edge(k - 1, bins) >= score) --k;
  while (k < bins && bin_edge(k, bins) < score) ++k;
  return bin_edge(k, bins);
}

std::vector<Span> form_spans_binned(const FingerprintMatrix& fp, double tau, std::size_t bins,
                                    const SpanOptions& options) {
  check_tau(tau);
  if (bins < 2) throw std::invalid_argument("histogram binning needs at least 2 bins");
  return grow_spans(fp, options,
                    [tau, bins](double score) { return quantize_score(score, bins) > tau; });
}

}  // namespace semtoken
