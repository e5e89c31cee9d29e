#include "semtoken/query.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "random_inputs.hpp"
#include "semtoken/pretokenize.hpp"

namespace semtoken {
namespace {

Span with_mean(std::size_t begin, std::vector<double> mean) {
  return {begin, begin + 1, std::move(mean), 0.0, Granularity::kUnassigned};
}

std::vector<std::size_t> indices(const std::vector<ScoredSpan>& kept) {
  std::vector<std::size_t> out;
  for (const auto& k : kept) out.push_back(k.index);
  return out;
}

TEST(SpanImportance, Examples) {
  const Span s = with_mean(0, {1.0, 0.0});
  EXPECT_NEAR(span_importance(std::vector{1.0, 0.0}, s), 1.0, 1e-12);
  EXPECT_EQ(span_importance(std::vector{0.0, 2.0}, s), 0.0);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(span_importance(std::vector{h, h}, s), 0.7071, 1e-4);
}

TEST(SpanImportance, DimensionMismatchThrows) {
  EXPECT_THROW(span_importance(std::vector{1.0}, with_mean(0, {1.0, 0.0})), std::invalid_argument);
}

TEST(FilterSpans, Examples) {
  // means chosen so that cosine with (1, 0) is 0.9, 0.2, 0.6
  std::vector<Span> spans;
  for (double s : {0.9, 0.2, 0.6}) spans.push_back(with_mean(spans.size(), {s, std::sqrt(1 - s * s)}));
  const std::vector<double> q = {1.0, 0.0};
  const auto kept = filter_spans(spans, q, 0.5);
  EXPECT_EQ(indices(kept), (std::vector<std::size_t>{0, 2}));
  EXPECT_NEAR(kept[0].score, 0.9, 1e-12);
  EXPECT_NEAR(kept[1].score, 0.6, 1e-12);
  EXPECT_EQ(filter_spans(spans, q, -1.0).size(), 3u);
  EXPECT_THROW(filter_spans(spans, q, 1.0 + 1e-9), std::invalid_argument);
  EXPECT_THROW(filter_spans(spans, q, -1.5), std::invalid_argument);
}

TEST(FilterSpans, ThresholdOneKeepsOnlyParallelSpans) {
  std::vector<Span> spans = {with_mean(0, {2.0, 0.0}), with_mean(1, {1.0, 0.1})};
  EXPECT_EQ(indices(filter_spans(spans, std::vector{1.0, 0.0}, 1.0)), (std::vector<std::size_t>{0}));
}

TEST(FilterSpans, NestingOrderAndScaleInvariance) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rows = testing::random_rows(rng, 12, 4, 0.0);
    std::vector<Span> spans;
    for (const auto& r : rows) spans.push_back(with_mean(spans.size(), r));
    const auto q = testing::random_rows(rng, 1, 4, 0.0).front();
    double t1 = t(rng), t2 = t(rng);
    if (t1 > t2) std::swap(t1, t2);

    const auto loose = indices(filter_spans(spans, q, t1));
    const auto tight = indices(filter_spans(spans, q, t2));
    EXPECT_TRUE(std::includes(loose.begin(), loose.end(), tight.begin(), tight.end()));
    EXPECT_TRUE(std::is_sorted(loose.begin(), loose.end()));

    auto scaled = q;
    for (double& x : scaled) x *= 37.5;
    EXPECT_EQ(indices(filter_spans(spans, scaled, t1)), loose);
  }
}

TEST(QueryFingerprint, MeanPoolsEmbeddedQuery) {
  const BuiltinEmbedder e{16, 3, 1};
  const TokenStream q = pretokenize("budget tables");
  const auto fp = query_fingerprint(e, q);
  const FingerprintMatrix rows = embed_tokens(q, 1, 16, 3);
  ASSERT_EQ(fp.size(), 16u);
  for (std::size_t c = 0; c < 16; ++c) EXPECT_NEAR(fp[c], (rows.row(0)[c] + rows.row(1)[c]) / 2, 1e-15);
  EXPECT_THROW(query_fingerprint(e, TokenStream{}), std::invalid_argument);
}

}  // namespace
}  // namespace semtoken
