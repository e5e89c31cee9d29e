#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace semtoken {

/// Half-open byte interval [begin, end) into a source buffer.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

/// Half-open token index interval [begin, end) into a TokenStream.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin >= end; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

struct Token {
  std::string surface;
  std::uint64_t id = 0;  // 64-bit hash of the surface
  ByteRange bytes;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Ordered tokens with non-overlapping, strictly increasing byte ranges.
class TokenStream {
 public:
  TokenStream() = default;
  explicit TokenStream(std::vector<Token> tokens);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }
  const std::vector<Token>& tokens() const { return tokens_; }

  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }

  friend bool operator==(const TokenStream&, const TokenStream&) = default;

 private:
  std::vector<Token> tokens_;
};

std::uint64_t surface_id(std::string_view surface);

/// Row-major n x d matrix of contextual fingerprints. Every value is finite.
class FingerprintMatrix {
 public:
  FingerprintMatrix() = default;
  /// Zero-filled n x d matrix.
  FingerprintMatrix(std::size_t rows, std::size_t dim);
  /// Takes ownership of row-major data; throws Error(kData) on NaN/Inf and
  /// std::invalid_argument if data.size() != rows * dim.
  FingerprintMatrix(std::size_t rows, std::size_t dim, std::vector<double> data);

  static FingerprintMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return rows_ == 0; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  const std::vector<double>& data() const { return data_; }

  /// Copy of rows [begin, end).
  FingerprintMatrix slice(std::size_t begin, std::size_t end) const;

  friend bool operator==(const FingerprintMatrix&, const FingerprintMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

enum class Granularity { kUnassigned, kFine, kCoarse, kDropped };

const char* to_string(Granularity g);

struct Span {
  std::size_t begin = 0;  // first token index
  std::size_t end = 0;    // one past the last token index
  std::vector<double> mean_fp;
  double entropy = 0.0;
  Granularity granularity = Granularity::kUnassigned;

  std::size_t width() const { return end - begin; }
  TokenRange range() const { return {begin, end}; }
};

/// Threshold on span entropy separating Fine from Coarse spans.
struct DeltaPolicy {
  enum class Kind { kAbsolute, kPercentile };

  Kind kind = Kind::kPercentile;
  double value = 60.0;

  static DeltaPolicy absolute(double v) { return {Kind::kAbsolute, v}; }
  static DeltaPolicy percentile(double p) { return {Kind::kPercentile, p}; }

  friend bool operator==(const DeltaPolicy&, const DeltaPolicy&) = default;
};

/// Whether span growth compares each candidate with the span's first token
/// (kAnchor) or with its immediate predecessor (kChained).
enum class SpanLinkage { kAnchor, kChained };

enum class CoarseSurface { kConcat, kFirstToken };

struct BuiltinEmbedderSpec {
  std::size_t dim = 64;
  std::uint64_t seed = 42;
  friend bool operator==(const BuiltinEmbedderSpec&, const BuiltinEmbedderSpec&) = default;
};

struct ExternalEmbedderSpec {
  std::string path;
  friend bool operator==(const ExternalEmbedderSpec&, const ExternalEmbedderSpec&) = default;
};

using EmbedderSpec = std::variant<BuiltinEmbedderSpec, ExternalEmbedderSpec>;

/// Query-conditioned span filter: spans whose mean fingerprint has cosine
/// similarity below `threshold` with `fingerprint` are dropped.
struct QueryFilter {
  std::string text;
  std::vector<double> fingerprint;
  double threshold = 0.0;
  friend bool operator==(const QueryFilter&, const QueryFilter&) = default;
};

struct CompressionConfig {
  double tau = 0.7;
  DeltaPolicy delta = DeltaPolicy::percentile(60.0);
  std::optional<std::size_t> budget;
  std::size_t window_radius = 2;
  EmbedderSpec embedder = BuiltinEmbedderSpec{};
  std::optional<std::size_t> histogram_bins;
  CoarseSurface coarse_surface = CoarseSurface::kConcat;
  SpanLinkage linkage = SpanLinkage::kAnchor;
  std::size_t max_span_width = 0;  // 0 = unlimited
  std::optional<QueryFilter> query;

  /// Throws std::invalid_argument when a field is out of its domain.
  void validate() const;

  friend bool operator==(const CompressionConfig&, const CompressionConfig&) = default;
};

enum class UnitKind { kFine, kCoarse };

const char* to_string(UnitKind k);

/// One emitted token of a compressed sequence: either an original token
/// (Fine) or a merged span (Coarse). `range` is the offset metadata that
/// maps the unit back onto the original stream.
struct Unit {
  UnitKind kind = UnitKind::kFine;
  TokenRange range;
  std::string surface;
  double entropy = 0.0;

  friend bool operator==(const Unit&, const Unit&) = default;
};

struct SequenceMeta {
  std::size_t original_tokens = 0;
  double ratio = 1.0;  // emitted units / original tokens; 1 for empty input
  CompressionConfig config;

  friend bool operator==(const SequenceMeta&, const SequenceMeta&) = default;
};

struct CompressedSequence {
  std::vector<Unit> units;
  SequenceMeta meta;

  std::size_t emitted() const { return units.size(); }
  /// Ranges of the original stream not covered by any unit, in order.
  std::vector<TokenRange> gaps() const;

  friend bool operator==(const CompressedSequence&, const CompressedSequence&) = default;
};

}  // namespace semtoken
