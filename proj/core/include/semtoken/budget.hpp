#pragma once

#include <span>
#include <vector>

#include "semtoken/embedder.hpp"
#include "semtoken/types.hpp"

namespace semtoken {

/// Span indices ordered by entropy descending, ties by smaller start.
std::vector<std::size_t> rank_by_entropy(std::span<const Span> spans);

/// The `b` highest-entropy spans (ties by smaller start), returned in
/// positional order. All spans when b >= spans.size().
std::vector<std::size_t> select_top_b(std::span<const Span> spans, std::size_t b);

/// Assigns Fine/Coarse/Dropped to every span that is not already Dropped so
/// that the emitted unit count stays within `budget`. Spans are visited in
/// entropy rank: Fine when the running total plus the span width fits, else
/// Coarse (one unit). If the total still exceeds the budget, Coarse spans are
/// dropped lowest entropy first until it fits.
void allocate_budget(std::vector<Span>& spans, std::size_t budget);

/// Everything compress() computed along the way, for reports.
struct CompressionTrace {
  CompressedSequence sequence;
  std::vector<Span> spans;          // final granularity per span
  std::vector<double> query_scores; // per span; empty without a query filter
  double delta = 0.0;
};

CompressionTrace compress_traced(const TokenStream& stream, const EmbeddingProvider& provider,
                                 const CompressionConfig& config,
                                 const EmbedOptions& embed_options = {});

CompressedSequence compress(const TokenStream& stream, const EmbeddingProvider& provider,
                            const CompressionConfig& config);

struct DecodeResult {
  TokenStream tokens;
  std::vector<TokenRange> gaps;  // original ranges that were dropped

  bool lossless() const { return gaps.empty(); }
};

/// Expands unit ranges back into original tokens. Throws Error(kAlignment)
/// when the original length differs from the recorded one and
/// Error(kCorruption) for out-of-bounds or overlapping ranges.
DecodeResult decode(const CompressedSequence& sequence, const TokenStream& original);

}  // namespace semtoken
