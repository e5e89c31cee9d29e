#include "semtoken/embedder.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"

namespace semtoken {
namespace {

TokenStream words(std::initializer_list<const char*> ws) {
  std::string text;
  for (const char* w : ws) text += std::string(w) + " ";
  return pretokenize(text);
}

std::vector<double> row(const FingerprintMatrix& m, std::size_t i) {
  auto r = m.row(i);
  return {r.begin(), r.end()};
}

TEST(Embedder, EmptyStreamGivesEmptyMatrix) {
  const FingerprintMatrix m = embed_tokens(TokenStream{}, 2, 16, 1);
  EXPECT_EQ(m.rows(), 0u);
  EXPECT_EQ(m.dim(), 16u);
}

TEST(Embedder, RejectsTinyDimension) {
  EXPECT_THROW(embed_tokens(words({"a"}), 1, 1, 0), std::invalid_argument);
}

TEST(Embedder, RowsAreUnitNorm) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed : {0ULL, 7ULL, 42ULL, 0xdeadbeefULL}) {
    const TokenStream s = pretokenize(testing::prose(rng, 80) + " a ; 東京");
    const FingerprintMatrix m = embed_tokens(s, 2, 32, seed);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double n2 = 0;
      for (double x : m.row(i)) n2 += x * x;
      EXPECT_NEAR(std::sqrt(n2), 1.0, 1e-6);
    }
  }
}

TEST(Embedder, IdenticalWindowsGiveIdenticalRows) {
  // windows of tokens 2 and 4 are both (q, p, q) for k = 1
  const FingerprintMatrix m = embed_tokens(words({"p", "q", "p", "q", "p", "q", "p"}), 1, 16, 3);
  EXPECT_EQ(row(m, 2), row(m, 4));
}

TEST(Embedder, BoundaryWindowsOfRepeatedToken) {
  const FingerprintMatrix m = embed_tokens(words({"x", "x", "x"}), 1, 16, 7);
  EXPECT_EQ(row(m, 0), row(m, 2));
  EXPECT_NE(row(m, 0), row(m, 1));
}

TEST(Embedder, RowDependsOnlyOnItsWindow) {
  std::mt19937_64 rng(2);
  const std::string text = testing::prose(rng, 60);
  const TokenStream base = pretokenize(text);
  const std::size_t k = 2;
  const FingerprintMatrix a = embed_tokens(base, k, 32, 9);

  std::vector<Token> edited = base.tokens();
  const std::size_t victim = 30;
  edited[victim].surface = "COMPLETELYDIFFERENT";
  const FingerprintMatrix b = embed_tokens(TokenStream(edited), k, 32, 9);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const bool inside = i + k >= victim && i <= victim + k;
    if (inside) {
      EXPECT_NE(row(a, i), row(b, i)) << i;
    } else {
      EXPECT_EQ(row(a, i), row(b, i)) << i;
    }
  }
}

TEST(Embedder, DeterministicAndSeedSensitive) {
  const TokenStream s = words({"alpha", "beta", "gamma", "delta"});
  EXPECT_EQ(embed_tokens(s, 2, 64, 42), embed_tokens(s, 2, 64, 42));
  EXPECT_NE(embed_tokens(s, 2, 64, 42), embed_tokens(s, 2, 64, 43));
}

TEST(Embedder, StrideBlocksMatchWholeComputation) {
  std::mt19937_64 rng(4);
  const TokenStream s = pretokenize(testing::prose(rng, 300));
  const FingerprintMatrix whole = embed_tokens(s, 3, 24, 5);
  const FingerprintMatrix threaded = embed_tokens(s, 3, 24, 5, {.stride = 7, .threads = 3});
  EXPECT_EQ(whole, threaded);
  EXPECT_EQ(embed_block(s, 3, 24, 5, 40, 97), whole.slice(40, 97));
}

TEST(Embedder, HashSurfaceIsUnitNormEvenForEmptySurface) {
  for (std::string_view w : {"", "a", "abc", "a much longer surface"}) {
    const auto v = hash_surface(w, 8, 1);
    double n2 = 0;
    for (double x : v) n2 += x * x;
    EXPECT_NEAR(n2, 1.0, 1e-12) << w;
  }
}

TEST(Embedder, ExternalProviderMustAlign) {
  const TokenStream s = words({"a", "b", "c"});
  EmbeddingProvider p = ExternalEmbeddings{FingerprintMatrix(2, 4)};
  try {
    fingerprints(p, s);
    FAIL() << "expected alignment error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kAlignment);
  }
  FingerprintMatrix ok = FingerprintMatrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(fingerprints(ExternalEmbeddings{ok}, s), ok);
}

TEST(CosineSim, Examples) {
  const std::vector<double> v = {0.3, -2.0, 5.0};
  EXPECT_NEAR(cosine_sim(v, v), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(cosine_sim(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
  EXPECT_NEAR(cosine_sim(std::vector<double>{1, 1}, std::vector<double>{1, 0}), 0.7071, 1e-4);
}

TEST(CosineSim, NearZeroVectorScoresZero) {
  EXPECT_EQ(cosine_sim(std::vector<double>{0, 0}, std::vector<double>{1, 0}), 0.0);
  EXPECT_EQ(cosine_sim(std::vector<double>{1e-14, 0}, std::vector<double>{1, 0}), 0.0);
}

TEST(CosineSim, SymmetricAndScaleInvariant) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> alpha(0.01, 100.0);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> a(5), b(5);
    for (auto& x : a) x = g(rng);
    for (auto& x : b) x = g(rng);
    const double s = cosine_sim(a, b);
    EXPECT_EQ(s, cosine_sim(b, a));
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
    std::vector<double> scaled = a;
    const double k = alpha(rng);
    for (auto& x : scaled) x *= k;
    EXPECT_NEAR(cosine_sim(scaled, b), s, 1e-12);
  }
}

TEST(CosineSim, DimensionMismatchThrows) {
  EXPECT_THROW(cosine_sim(std::vector<double>{1, 2}, std::vector<double>{1}), std::invalid_argument);
}

}  // namespace
}  // namespace semtoken
