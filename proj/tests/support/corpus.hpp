#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semtoken/types.hpp"

namespace semtoken::testing {

// Deterministic synthetic documents for tests and benchmarks.

struct StructuredDocument {
  std::string text;
  std::vector<ByteRange> boilerplate;  // byte ranges of repeated blocks
};

/// Prose of pseudo-words with punctuation, roughly `tokens` tokens long.
std::string prose(std::mt19937_64& rng, std::size_t tokens);

/// Unique sentences interleaved with a repeated boilerplate block (separator
/// rules, zero-filled table rows, repeated placeholder cells).
StructuredDocument structured_document(std::uint64_t seed, std::size_t paragraphs);

/// A document of at least `tokens` tokens of structured text, truncated at a
/// token boundary. Used for scaling measurements.
std::string document_of_size(std::uint64_t seed, std::size_t tokens);

/// Fixed corpus of `count` varied documents (prose, structured, code-like,
/// numeric, repeated words, tiny and empty inputs).
std::vector<std::string> fixture_corpus(std::size_t count = 50, std::uint64_t seed = 2024);

/// Token-level boilerplate mask for a structured document.
std::vector<bool> boilerplate_mask(const TokenStream& stream,
                                   const std::vector<ByteRange>& boilerplate);

}  // namespace semtoken::testing
