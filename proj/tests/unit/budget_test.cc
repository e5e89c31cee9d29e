#include "semtoken/budget.hpp"

#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"

namespace semtoken {
namespace {

Span span(std::size_t begin, std::size_t end, double entropy) {
  return {begin, end, {}, entropy, Granularity::kUnassigned};
}

// Spans [0,4) [4,5) [5,8) with entropies 0.2475, 0, 0.08/3 under tau = 0.5.
FingerprintMatrix three_span_fingerprints() {
  return FingerprintMatrix::from_rows({{1, 0, 0},
                                       {1, 0.6, 0},
                                       {1, -0.6, 0},
                                       {1, 0, 0.6},
                                       {0, 1, 0},
                                       {0, 0, 1},
                                       {0.2, 0, 1},
                                       {-0.2, 0, 1}});
}

CompressionConfig tau_half() {
  CompressionConfig c;
  c.tau = 0.5;
  return c;
}

TEST(SelectTopB, Examples) {
  const std::vector<Span> spans = {span(0, 1, 0.9), span(1, 2, 0.1), span(2, 3, 0.5)};
  EXPECT_TRUE(select_top_b(spans, 0).empty());
  EXPECT_EQ(select_top_b(spans, 2), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(select_top_b(spans, 9), (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<Span> tied = {span(0, 1, 0.4), span(1, 2, 0.4)};
  EXPECT_EQ(select_top_b(tied, 1), (std::vector<std::size_t>{0}));
}

TEST(SelectTopB, MaximizesEntropySumOverSubsets) {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> count(0, 12);
  std::uniform_int_distribution<int> level(0, 5);  // coarse levels force ties
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Span> spans;
    std::vector<double> h;
    for (std::size_t i = count(rng); i > 0; --i) {
      h.push_back(level(rng) * 0.25);
      spans.push_back(span(spans.size(), spans.size() + 1, h.back()));
    }
    std::uniform_int_distribution<std::size_t> bdist(0, spans.size() + 1);
    const std::size_t b = bdist(rng);
    const auto chosen = select_top_b(spans, b);
    double sum = 0;
    for (std::size_t i : chosen) sum += h[i];
    EXPECT_EQ(chosen.size(), std::min(b, spans.size()));
    EXPECT_DOUBLE_EQ(sum, oracle::best_subset_sum(h, b));
  }
}

TEST(AllocateBudget, FineFirstThenCoarseThenDrop) {
  std::vector<Span> spans = {span(0, 4, 0.9), span(4, 5, 0.0), span(5, 8, 0.4)};
  allocate_budget(spans, 5);
  EXPECT_EQ(spans[0].granularity, Granularity::kFine);
  EXPECT_EQ(spans[1].granularity, Granularity::kDropped);
  EXPECT_EQ(spans[2].granularity, Granularity::kCoarse);
}

TEST(AllocateBudget, LeavesQueryDroppedSpansAlone) {
  std::vector<Span> spans = {span(0, 2, 0.9), span(2, 3, 0.5), span(3, 5, 0.1)};
  spans[0].granularity = Granularity::kDropped;
  allocate_budget(spans, 10);
  EXPECT_EQ(spans[0].granularity, Granularity::kDropped);
  EXPECT_EQ(spans[1].granularity, Granularity::kFine);
  EXPECT_EQ(spans[2].granularity, Granularity::kFine);
}

TEST(Compress, SingleTokenIsOneCoarseUnit) {
  const CompressedSequence seq = compress(pretokenize("hello"), BuiltinEmbedder{}, {});
  ASSERT_EQ(seq.units.size(), 1u);
  EXPECT_EQ(seq.units[0].kind, UnitKind::kCoarse);
  EXPECT_EQ(seq.meta.ratio, 1.0);
}

TEST(Compress, IdenticalFingerprintsCollapseToOneUnit) {
  const TokenStream s = pretokenize("w w w w w w w w");
  const auto fp = FingerprintMatrix::from_rows(std::vector(8, std::vector{0.6, 0.8}));
  const CompressionTrace t = compress_traced(s, ExternalEmbeddings{fp}, {});
  ASSERT_EQ(t.spans.size(), 1u);
  EXPECT_EQ(t.spans[0].entropy, 0.0);
  ASSERT_EQ(t.sequence.units.size(), 1u);
  EXPECT_EQ(t.sequence.units[0].kind, UnitKind::kCoarse);
  EXPECT_EQ(t.sequence.units[0].surface, "w w w w w w w w");
  EXPECT_DOUBLE_EQ(t.sequence.meta.ratio, 1.0 / 8.0);
}

TEST(Compress, ThresholdModeOnHandBuiltSpans) {
  const TokenStream s = pretokenize("a b c d e f g h");
  const CompressionTrace t = compress_traced(s, ExternalEmbeddings{three_span_fingerprints()}, tau_half());
  ASSERT_EQ(t.spans.size(), 3u);
  EXPECT_NEAR(t.spans[0].entropy, 0.2475, 1e-12);
  EXPECT_EQ(t.spans[1].entropy, 0.0);
  EXPECT_NEAR(t.spans[2].entropy, 0.08 / 3.0, 1e-12);
  EXPECT_EQ(t.spans[0].granularity, Granularity::kFine);
  EXPECT_EQ(t.spans[1].granularity, Granularity::kCoarse);
  EXPECT_EQ(t.spans[2].granularity, Granularity::kCoarse);
  EXPECT_EQ(t.sequence.units.size(), 6u);
}

TEST(Compress, BudgetDropsLowestEntropySpan) {
  const TokenStream s = pretokenize("a b c d e f g h");
  CompressionConfig cfg = tau_half();
  cfg.budget = 5;
  const CompressedSequence seq = compress(s, ExternalEmbeddings{three_span_fingerprints()}, cfg);
  ASSERT_EQ(seq.units.size(), 5u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(seq.units[i].kind, UnitKind::kFine);
    EXPECT_EQ(seq.units[i].range, (TokenRange{i, i + 1}));
    EXPECT_EQ(seq.units[i].surface, s[i].surface);
  }
  EXPECT_EQ(seq.units[4].kind, UnitKind::kCoarse);
  EXPECT_EQ(seq.units[4].range, (TokenRange{5, 8}));
  EXPECT_EQ(seq.units[4].surface, "f g h");
  EXPECT_DOUBLE_EQ(seq.meta.ratio, 5.0 / 8.0);

  const DecodeResult d = decode(seq, s);
  EXPECT_EQ(d.gaps, (std::vector<TokenRange>{{4, 5}}));
  EXPECT_FALSE(d.lossless());
  ASSERT_EQ(d.tokens.size(), 7u);
  EXPECT_EQ(d.tokens[4].surface, "f");
}

TEST(Compress, FirstTokenSurfacePolicy) {
  const TokenStream s = pretokenize("a b c d e f g h");
  CompressionConfig cfg = tau_half();
  cfg.coarse_surface = CoarseSurface::kFirstToken;
  const CompressedSequence seq = compress(s, ExternalEmbeddings{three_span_fingerprints()}, cfg);
  EXPECT_EQ(seq.units.back().surface, "f");
}

TEST(Compress, EmptyStream) {
  const CompressedSequence seq = compress(TokenStream{}, BuiltinEmbedder{}, {});
  EXPECT_TRUE(seq.units.empty());
  EXPECT_EQ(seq.meta.ratio, 1.0);
  EXPECT_EQ(seq.meta.original_tokens, 0u);
  const DecodeResult d = decode(seq, TokenStream{});
  EXPECT_TRUE(d.tokens.empty());
  EXPECT_TRUE(d.lossless());
}

TEST(Compress, TauOneKeepsEveryToken) {
  CompressionConfig cfg;
  cfg.tau = 1.0;
  const TokenStream s = pretokenize(testing::fixture_corpus()[0]);
  EXPECT_EQ(compress(s, BuiltinEmbedder{}, cfg).meta.ratio, 1.0);
}

TEST(Compress, ExternalMismatchIsAlignmentError) {
  try {
    compress(pretokenize("a b"), ExternalEmbeddings{FingerprintMatrix(3, 2)}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignment);
  }
}

TEST(Compress, RejectsInvalidConfig) {
  CompressionConfig cfg;
  cfg.budget = 0;
  EXPECT_THROW(compress(pretokenize("a"), BuiltinEmbedder{}, cfg), std::invalid_argument);
  cfg = {};
  cfg.delta = DeltaPolicy::percentile(120);
  EXPECT_THROW(compress(pretokenize("a"), BuiltinEmbedder{}, cfg), std::invalid_argument);
}

TEST(Compress, DeterministicAndLosslessWithoutBudget) {
  for (const std::string& doc : testing::fixture_corpus(20)) {
    const TokenStream s = pretokenize(doc);
    const CompressedSequence a = compress(s, BuiltinEmbedder{}, {});
    EXPECT_EQ(a, compress(s, BuiltinEmbedder{}, {}));
    const DecodeResult d = decode(a, s);
    EXPECT_TRUE(d.lossless());
    EXPECT_EQ(d.tokens, s);
    EXPECT_EQ(reassemble(d.tokens, doc), doc);
    EXPECT_GT(a.meta.ratio, 0.0);
    EXPECT_LE(a.meta.ratio, 1.0);
  }
}

TEST(Compress, BudgetPropertiesOnCorpus) {
  const auto corpus = testing::fixture_corpus(30);
  for (const std::string& doc : corpus) {
    const TokenStream s = pretokenize(doc);
    if (s.empty()) continue;
    std::size_t previous = 0;
    for (std::size_t b = 1; b <= s.size() + 2; b += 1 + s.size() / 25) {
      CompressionConfig cfg;
      cfg.budget = b;
      const CompressionTrace t = compress_traced(s, BuiltinEmbedder{}, cfg);
      const std::size_t emitted = t.sequence.emitted();
      EXPECT_LE(emitted, b);
      EXPECT_GE(emitted, previous);
      previous = emitted;

      // a dropped span never beats a retained span of the same width
      for (const Span& dropped : t.spans) {
        if (dropped.granularity != Granularity::kDropped) continue;
        for (const Span& kept : t.spans) {
          if (kept.granularity != Granularity::kDropped && kept.width() == dropped.width()) {
            EXPECT_LE(dropped.entropy, kept.entropy);
          }
        }
      }
    }
  }
}

TEST(Compress, QueryFilterDropsDissimilarSpans) {
  const TokenStream s = pretokenize("a b c d e f g h");
  CompressionConfig cfg = tau_half();
  cfg.query = QueryFilter{"", {0.0, 0.0, 1.0}, 0.5};
  const CompressionTrace t = compress_traced(s, ExternalEmbeddings{three_span_fingerprints()}, cfg);
  ASSERT_EQ(t.query_scores.size(), 3u);
  EXPECT_EQ(t.spans[0].granularity, Granularity::kDropped);
  EXPECT_EQ(t.spans[1].granularity, Granularity::kDropped);
  EXPECT_NE(t.spans[2].granularity, Granularity::kDropped);
  EXPECT_EQ(t.sequence.gaps(), (std::vector<TokenRange>{{0, 5}}));

  cfg.query->threshold = -1.0;
  EXPECT_EQ(compress(s, ExternalEmbeddings{three_span_fingerprints()}, cfg).gaps().size(), 0u);
}

TEST(Decode, RejectsLengthMismatch) {
  CompressedSequence seq;
  seq.meta.original_tokens = 3;
  try {
    decode(seq, pretokenize("a b"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignment);
  }
}

TEST(Decode, RejectsCorruptRanges) {
  const TokenStream s = pretokenize("a b c");
  for (std::vector<TokenRange> ranges : std::vector<std::vector<TokenRange>>{
           {{0, 4}}, {{1, 1}}, {{0, 2}, {1, 3}}, {{2, 3}, {0, 1}}}) {
    CompressedSequence seq;
    seq.meta.original_tokens = 3;
    for (TokenRange r : ranges) seq.units.push_back({UnitKind::kCoarse, r, "", 0.0});
    try {
      decode(seq, s);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kCorruption);
    }
  }
}

}  // namespace
}  // namespace semtoken
