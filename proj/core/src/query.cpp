#include "semtoken/query.hpp"

#include <stdexcept>

namespace semtoken {

double span_importance(std::span<const double> query_fp, const Span& span) {
  if (query_fp.size() != span.mean_fp.size()) {
    throw std::invalid_argument("query fingerprint has dimension " +
                                std::to_string(query_fp.size()) + ", span mean has " +
                                std::to_string(span.mean_fp.size()));
  }
  return cosine_sim(query_fp, span.mean_fp);
}

std::vector<ScoredSpan> filter_spans(std::span<const Span> spans, std::span<const double> query_fp,
                                     double threshold) {
  if (!(threshold >= -1.0 && threshold <= 1.0)) {
    throw std::invalid_argument("query threshold must lie in [-1, 1]");
  }
  std::vector<ScoredSpan> kept;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const double s = span_importance(query_fp, spans[i]);
    if (s >= threshold) kept.push_back({i, s});
  }
  return kept;
}

std::vector<double> query_fingerprint(const BuiltinEmbedder& embedder,
                                      const TokenStream& query_tokens) {
  if (query_tokens.empty()) throw std::invalid_argument("query text has no tokens");
  return mean_pool(
      embed_tokens(query_tokens, embedder.window_radius, embedder.dim, embedder.seed));
}

}  // namespace semtoken
