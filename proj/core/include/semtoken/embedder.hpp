#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "semtoken/types.hpp"

namespace semtoken {

struct BuiltinEmbedder {
  std::size_t dim = 64;
  std::uint64_t seed = 42;
  std::size_t window_radius = 2;
};

struct ExternalEmbeddings {
  FingerprintMatrix matrix;
};

/// Stand-in for a frozen contextual encoder.
using EmbeddingProvider = std::variant<BuiltinEmbedder, ExternalEmbeddings>;

struct EmbedOptions {
  std::size_t stride = 4096;  // rows per independently computed block
  std::size_t threads = 1;
};

/// Seeded feature-hashing fingerprint of a single surface (whole surface
/// plus byte 3-grams, signed buckets), unit norm. Exposed for tests.
std::vector<double> hash_surface(std::string_view surface, std::size_t dim,
                                 std::uint64_t seed);

/// Builtin contextual fingerprints. Row i sums hash_surface() of every
/// position in [i-k, i+k] weighted by 1/(1+|j-i|); positions past either end
/// of the stream contribute a shared padding symbol. Rows are L2-normalized.
FingerprintMatrix embed_tokens(const TokenStream& stream, std::size_t window_radius,
                               std::size_t dim, std::uint64_t seed,
                               const EmbedOptions& options = {});

/// Rows [begin, end) of embed_tokens(); bitwise identical to the full call.
FingerprintMatrix embed_block(const TokenStream& stream, std::size_t window_radius,
                              std::size_t dim, std::uint64_t seed,
                              std::size_t begin, std::size_t end);

/// Fingerprints for `stream` from either provider. External matrices must
/// have one row per token (Error kAlignment otherwise).
FingerprintMatrix fingerprints(const EmbeddingProvider& provider,
                               const TokenStream& stream,
                               const EmbedOptions& options = {});

/// Cosine similarity clamped to [-1, 1]; 0 when either norm is below 1e-12.
double cosine_sim(std::span<const double> a, std::span<const double> b);

/// Mean of all rows; empty vector for an empty matrix.
std::vector<double> mean_pool(const FingerprintMatrix& fp);

}  // namespace semtoken
