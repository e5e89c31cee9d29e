#pragma once

#include <vector>

#include "semtoken/types.hpp"

namespace semtoken {

struct SpanOptions {
  SpanLinkage linkage = SpanLinkage::kAnchor;
  std::size_t max_width = 0;  // 0 = unlimited
};

/// Greedy left-to-right span formation. A span opened at token t absorbs
/// t+1, t+2, ... while cosine(row_t, row_j) > tau (strictly) and closes at
/// the first failure, which opens the next span. Spans tile [0, n) and carry
/// the mean of their member rows; entropy is left at zero.
std::vector<Span> form_spans(const FingerprintMatrix& fp, double tau,
                             const SpanOptions& options = {});

/// Same loop, but each cosine score is first snapped up to the upper edge of
/// its bin in a uniform `bins`-way partition of [-1, 1]. When tau lies on a
/// bin edge the output is identical to form_spans().
std::vector<Span> form_spans_binned(const FingerprintMatrix& fp, double tau,
                                    std::size_t bins, const SpanOptions& options = {});

/// Upper edge of the bin containing `score`; bins are (e_{k-1}, e_k] with
/// e_k = -1 + 2k/bins, and e_0 = -1 holds exactly -1.
double quantize_score(double score, std::size_t bins);

}  // namespace semtoken
