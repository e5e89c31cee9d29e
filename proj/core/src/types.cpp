#include "semtoken/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "semtoken/errors.hpp"

namespace semtoken {

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const ByteRange& r = tokens_[i].bytes;
    if (r.end < r.begin) {
      throw std::invalid_argument("token " + std::to_string(i) + " has an inverted byte range");
    }
    if (i > 0 && r.begin < tokens_[i - 1].bytes.end) {
      throw std::invalid_argument("token " + std::to_string(i) +
                                  " overlaps or precedes its predecessor");
    }
  }
}

std::uint64_t surface_id(std::string_view surface) {
  // FNV-1a, 64-bit
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : surface) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

FingerprintMatrix::FingerprintMatrix(std::size_t rows, std::size_t dim)
    : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

FingerprintMatrix::FingerprintMatrix(std::size_t rows, std::size_t dim, std::vector<double> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (data_.size() != rows_ * dim_) {
    throw std::invalid_argument("fingerprint data has " + std::to_string(data_.size()) +
                                " values, expected " + std::to_string(rows_ * dim_));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorKind::kData, "non-finite fingerprint value at row " +
                                        std::to_string(i / std::max<std::size_t>(dim_, 1)));
    }
  }
}

FingerprintMatrix FingerprintMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t dim = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) throw std::invalid_argument("ragged fingerprint rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return FingerprintMatrix(rows.size(), dim, std::move(data));
}

FingerprintMatrix FingerprintMatrix::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > rows_) throw std::out_of_range("fingerprint slice out of range");
  std::vector<double> data(data_.begin() + static_cast<std::ptrdiff_t>(begin * dim_),
                           data_.begin() + static_cast<std::ptrdiff_t>(end * dim_));
  return FingerprintMatrix(end - begin, dim_, std::move(data));
}

const char* to_string(Granularity g) {
  switch (g) {
    case Granularity::kUnassigned: return "unassigned";
    case Granularity::kFine: return "fine";
    case Granularity::kCoarse: return "coarse";
    case Granularity::kDropped: return "dropped";
  }
  return "unknown";
}

const char* to_string(UnitKind k) { return k == UnitKind::kFine ? "fine" : "coarse"; }

void CompressionConfig::validate() const {
  if (!(tau >= -1.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [-1, 1]");
  if (delta.kind == DeltaPolicy::Kind::kPercentile) {
    if (!(delta.value >= 0.0 && delta.value <= 100.0)) {
      throw std::invalid_argument("delta percentile must lie in [0, 100]");
    }
  } else if (!std::isfinite(delta.value)) {
    throw std::invalid_argument("delta must be finite");
  }
  if (budget && *budget < 1) throw std::invalid_argument("budget must be at least 1");
  if (histogram_bins && *histogram_bins < 2) {
    throw std::invalid_argument("histogram bins must be at least 2");
  }
  if (const auto* b = std::get_if<BuiltinEmbedderSpec>(&embedder); b && b->dim < 2) {
    throw std::invalid_argument("embedding dimension must be at least 2");
  }
  if (query && !(query->threshold >= -1.0 && query->threshold <= 1.0)) {
    throw std::invalid_argument("query threshold must lie in [-1, 1]");
  }
}

std::vector<TokenRange> CompressedSequence::gaps() const {
  std::vector<TokenRange> out;
  std::size_t cursor = 0;
  for (const Unit& u : units) {
    if (u.range.begin > cursor) out.push_back({cursor, u.range.begin});
    cursor = std::max(cursor, u.range.end);
  }
  if (cursor < meta.original_tokens) out.push_back({cursor, meta.original_tokens});
  return out;
}

}  // namespace semtoken
