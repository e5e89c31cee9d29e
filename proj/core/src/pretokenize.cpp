#include "semtoken/pretokenize.hpp"

#include <stdexcept>

namespace semtoken {
namespace {

enum class CharClass { kSpace, kWord, kPunct };

struct Decoded {
  char32_t cp;
  std::size_t length;
  bool valid;
};

Decoded decode_utf8(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1, true};

  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2; cp = b0 & 0x1F; min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3; cp = b0 & 0x0F; min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4; cp = b0 & 0x07; min = 0x10000;
  } else {
    return {0, 1, false};
  }
  if (pos + len > s.size()) return {0, 1, false};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {0, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 1, false};
  return {cp, len, true};
}

bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

bool is_space(char32_t cp) {
  return in(cp, 0x09, 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         in(cp, 0x2000, 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    const bool alnum = in(cp, '0', '9') || in(cp, 'a', 'z') || in(cp, 'A', 'Z');
    return !alnum;  // whitespace is filtered out before this is asked
  }
  if (in(cp, 0x80, 0x9F)) return true;  // C1 controls
  if (in(cp, 0xA1, 0xBF)) {
    // Latin-1 punctuation and symbols, except ordinal indicators,
    // superscript digits, micro sign and vulgar fractions.
    return !(cp == 0xAA || cp == 0xB2 || cp == 0xB3 || cp == 0xB5 || cp == 0xB9 ||
             cp == 0xBA || in(cp, 0xBC, 0xBE));
  }
  return cp == 0xD7 || cp == 0xF7 ||
         in(cp, 0x2010, 0x2027) || in(cp, 0x2030, 0x205E) ||  // general punctuation
         in(cp, 0x20A0, 0x20CF) ||                            // currency
         in(cp, 0x2190, 0x23FF) ||                            // arrows, math, technical
         in(cp, 0x2500, 0x27BF) ||                            // box drawing .. dingbats
         in(cp, 0x2E00, 0x2E7F) ||                            // supplemental punctuation
         in(cp, 0x3001, 0x3003) || in(cp, 0x3008, 0x3011) || in(cp, 0x3014, 0x301F) ||
         in(cp, 0xFE10, 0xFE1F) || in(cp, 0xFE30, 0xFE4F) ||
         in(cp, 0xFF01, 0xFF0F) || in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
         in(cp, 0xFF5B, 0xFF65) ||
         in(cp, 0x1F000, 0x1FAFF);                            // emoji and pictographs
}

CharClass classify(const Decoded& d) {
  if (!d.valid) return CharClass::kPunct;
  if (is_space(d.cp)) return CharClass::kSpace;
  return is_punct(d.cp) ? CharClass::kPunct : CharClass::kWord;
}

Token make_token(std::string_view source, std::size_t begin, std::size_t end) {
  Token t;
  t.surface = std::string(source.substr(begin, end - begin));
  t.id = surface_id(t.surface);
  t.bytes = {begin, end};
  return t;
}

}  // namespace

TokenStream pretokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;

  auto flush_word = [&](std::size_t end) {
    if (word_start != std::string_view::npos) {
      tokens.push_back(make_token(source, word_start, end));
      word_start = std::string_view::npos;
    }
  };

  while (pos < source.size()) {
    const Decoded d = decode_utf8(source, pos);
    switch (classify(d)) {
      case CharClass::kSpace:
        flush_word(pos);
        break;
      case CharClass::kPunct:
        flush_word(pos);
        tokens.push_back(make_token(source, pos, pos + d.length));
        break;
      case CharClass::kWord:
        if (word_start == std::string_view::npos) word_start = pos;
        break;
    }
    pos += d.length;
  }
  flush_word(pos);
  return TokenStream(std::move(tokens));
}

TokenStream parse_pretokenized(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::size_t end = eol;
    if (end > pos && source[end - 1] == '\r') --end;
    if (end == pos) break;  // blank line terminates
    tokens.push_back(make_token(source, pos, end));
    pos = eol + 1;
  }
  return TokenStream(std::move(tokens));
}

std::string reassemble(const TokenStream& stream, std::string_view source) {
  std::string out;
  out.reserve(source.size());
  std::size_t cursor = 0;
  for (const Token& t : stream) {
    if (t.bytes.end > source.size() || t.bytes.begin < cursor) {
      throw std::invalid_argument("token byte range does not fit the source");
    }
    if (source.substr(t.bytes.begin, t.bytes.size()) != t.surface) {
      throw std::invalid_argument("token surface does not match the source bytes");
    }
    out.append(source.substr(cursor, t.bytes.begin - cursor));
    out.append(t.surface);
    cursor = t.bytes.end;
  }
  out.append(source.substr(cursor));
  return out;
}

bool is_valid_utf8(std::string_view text) {
  for (std::size_t pos = 0; pos < text.size();) {
    const Decoded d = decode_utf8(text, pos);
    if (!d.valid) return false;
    pos += d.length;
  }
  return true;
}

}  // namespace semtoken
