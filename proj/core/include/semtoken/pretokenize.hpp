#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "semtoken/types.hpp"

namespace semtoken {

// Word-level pretokenizer over UTF-8 text:
//   * Unicode whitespace separates tokens and is never part of one;
//   * a maximal run of letters/digits (any non-ASCII code point that is not
//     whitespace or punctuation counts as a letter) is one token;
//   * every punctuation or symbol code point is a token of its own.
// Bytes that are not valid UTF-8 become single-byte punctuation tokens so the
// byte coverage stays lossless.
TokenStream pretokenize(std::string_view source);

// One token per line; a blank line (or end of input) terminates the list.
// A trailing '\r' is stripped. Byte ranges refer to positions in `source`.
TokenStream parse_pretokenized(std::string_view source);

// Rebuilds `source` from the token surfaces and the bytes between tokens.
// Throws std::invalid_argument if a surface does not match its byte range.
std::string reassemble(const TokenStream& stream, std::string_view source);

bool is_valid_utf8(std::string_view text);

}  // namespace semtoken
