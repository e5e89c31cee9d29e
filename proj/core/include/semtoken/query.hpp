#pragma once

#include <span>
#include <vector>

#include "semtoken/embedder.hpp"
#include "semtoken/types.hpp"

namespace semtoken {

struct ScoredSpan {
  std::size_t index = 0;  // position in the input span list
  double score = 0.0;
};

/// Cosine between a query fingerprint and the span's mean fingerprint.
double span_importance(std::span<const double> query_fp, const Span& span);

/// Spans with importance >= threshold, in input order.
std::vector<ScoredSpan> filter_spans(std::span<const Span> spans,
                                     std::span<const double> query_fp, double threshold);

/// Mean-pooled fingerprint of the query text under a builtin provider.
std::vector<double> query_fingerprint(const BuiltinEmbedder& embedder,
                                      const TokenStream& query_tokens);

}  // namespace semtoken
