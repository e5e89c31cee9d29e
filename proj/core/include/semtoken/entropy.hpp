#pragma once

#include <span>
#include <vector>

#include "semtoken/types.hpp"

namespace semtoken {

/// Trace of the population covariance of rows [begin, end):
/// (1/m) * sum ||h_i - mean||^2. Zero for one row or identical rows.
double span_entropy(const FingerprintMatrix& fp, std::size_t begin, std::size_t end);

/// Entropy of all rows of `rows`.
double span_entropy(const FingerprintMatrix& rows);

/// Fills Span::entropy for every span.
void score_spans(std::vector<Span>& spans, const FingerprintMatrix& fp);

/// Fine iff entropy > delta.
Granularity assign_granularity(double entropy, double delta);

/// Absolute policies pass through; percentile policies interpolate linearly
/// between order statistics of `entropies` (which must be non-empty).
double resolve_delta(const DeltaPolicy& policy, std::span<const double> entropies);

}  // namespace semtoken
