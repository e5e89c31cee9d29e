#include "semtoken/budget.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "semtoken/entropy.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/query.hpp"
#include "semtoken/spans.hpp"

namespace semtoken {
namespace {

std::string coarse_surface(const TokenStream& stream, const Span& span, CoarseSurface policy) {
  if (policy == CoarseSurface::kFirstToken) return stream[span.begin].surface;
  std::string out;
  for (std::size_t i = span.begin; i < span.end; ++i) {
    if (i > span.begin) out.push_back(' ');
    out += stream[i].surface;
  }
  return out;
}

std::vector<Unit> emit_units(const TokenStream& stream, const std::vector<Span>& spans,
                             CoarseSurface policy) {
  std::vector<Unit> units;
  for (const Span& s : spans) {
    switch (s.granularity) {
      case Granularity::kFine:
        for (std::size_t i = s.begin; i < s.end; ++i) {
          units.push_back({UnitKind::kFine, {i, i + 1}, stream[i].surface, s.entropy});
        }
        break;
      case Granularity::kCoarse:
        units.push_back({UnitKind::kCoarse, s.range(), coarse_surface(stream, s, policy), s.entropy});
        break;
      case Granularity::kDropped:
        break;
      case Granularity::kUnassigned:
        throw std::logic_error("span left without a granularity");
    }
  }
  return units;
}

}  // namespace

std::vector<std::size_t> rank_by_entropy(std::span<const Span> spans) {
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (spans[a].entropy != spans[b].entropy) return spans[a].entropy > spans[b].entropy;
    return spans[a].begin < spans[b].begin;
  });
  return order;
}

std::vector<std::size_t> select_top_b(std::span<const Span> spans, std::size_t b) {
  std::vector<std::size_t> order = rank_by_entropy(spans);
  order.resize(std::min(b, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

void allocate_budget(std::vector<Span>& spans, std::size_t budget) {
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].granularity != Granularity::kDropped) live.push_back(i);
  }
  std::vector<Span> view;
  view.reserve(live.size());
  for (std::size_t i : live) view.push_back(spans[i]);
  const std::vector<std::size_t> order = rank_by_entropy(view);

  std::size_t total = 0;
  for (std::size_t r : order) {
    Span& s = spans[live[r]];
    if (total + s.width() <= budget) {
      s.granularity = Granularity::kFine;
      total += s.width();
    } else {
      s.granularity = Granularity::kCoarse;
      total += 1;
    }
  }
  // Fine spans alone never exceed the budget, so dropping Coarse spans
  // (one unit each) always terminates at total <= budget.
  for (auto it = order.rbegin(); it != order.rend() && total > budget; ++it) {
    Span& s = spans[live[*it]];
    if (s.granularity == Granularity::kCoarse) {
      s.granularity = Granularity::kDropped;
      total -= 1;
    }
  }
}

CompressionTrace compress_traced(const TokenStream& stream, const EmbeddingProvider& provider,
                                 const CompressionConfig& config,
                                 const EmbedOptions& embed_options) {
  config.validate();
  CompressionTrace trace;
  trace.sequence.meta.original_tokens = stream.size();
  trace.sequence.meta.ratio = 1.0;
  trace.sequence.meta.config = config;
  if (stream.empty()) return trace;

  const FingerprintMatrix fp = fingerprints(provider, stream, embed_options);
  const SpanOptions span_options{config.linkage, config.max_span_width};
  trace.spans = config.histogram_bins
                    ? form_spans_binned(fp, config.tau, *config.histogram_bins, span_options)
                    : form_spans(fp, config.tau, span_options);
  score_spans(trace.spans, fp);

  if (config.query) {
    trace.query_scores.reserve(trace.spans.size());
    for (Span& s : trace.spans) {
      const double score = span_importance(config.query->fingerprint, s);
      trace.query_scores.push_back(score);
      if (score < config.query->threshold) s.granularity = Granularity::kDropped;
    }
  }

  std::vector<double> entropies;
  for (const Span& s : trace.spans) {
    if (s.granularity != Granularity::kDropped) entropies.push_back(s.entropy);
  }
  if (!entropies.empty()) {
    trace.delta = resolve_delta(config.delta, entropies);
    if (config.budget) {
      allocate_budget(trace.spans, *config.budget);
    } else {
      for (Span& s : trace.spans) {
        if (s.granularity != Granularity::kDropped) {
          s.granularity = assign_granularity(s.entropy, trace.delta);
        }
      }
    }
  }

  trace.sequence.units = emit_units(stream, trace.spans, config.coarse_surface);
  trace.sequence.meta.ratio =
      static_cast<double>(trace.sequence.units.size()) / static_cast<double>(stream.size());
  return trace;
}

CompressedSequence compress(const TokenStream& stream, const EmbeddingProvider& provider,
                            const CompressionConfig& config) {
  return compress_traced(stream, provider, config).sequence;
}

DecodeResult decode(const CompressedSequence& sequence, const TokenStream& original) {
  const std::size_t n = original.size();
  if (sequence.meta.original_tokens != n) {
    throw Error(ErrorKind::kAlignment,
                "compressed sequence was built from " +
                    std::to_string(sequence.meta.original_tokens) + " tokens, original has " +
                    std::to_string(n));
  }
  std::vector<Token> tokens;
  tokens.reserve(n);
  std::size_t cursor = 0;
  for (std::size_t u = 0; u < sequence.units.size(); ++u) {
    const TokenRange r = sequence.units[u].range;
    if (r.empty() || r.end > n || r.begin < cursor) {
      throw Error(ErrorKind::kCorruption,
                  "unit " + std::to_string(u) + " has invalid range [" + std::to_string(r.begin) +
                      ", " + std::to_string(r.end) + ")");
    }
    for (std::size_t i = r.begin; i < r.end; ++i) tokens.push_back(original[i]);
    cursor = r.end;
  }
  return {TokenStream(std::move(tokens)), sequence.gaps()};
}

}  // namespace semtoken
