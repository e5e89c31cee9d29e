#include <string>

#include "commands.hpp"
#include "io.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"
#include "semtoken/sequence_io.hpp"

namespace semtoken::cli {

namespace {

// Source bytes of every maximal run of recovered tokens, one run per line.
std::string covered_text(const CompressedSequence& seq, const LoadedDocument& doc) {
  std::string text;
  std::size_t run_begin = 0, run_end = 0;
  auto flush = [&] {
    if (run_end <= run_begin) return;
    const ByteRange first = doc.tokens[run_begin].bytes;
    const ByteRange last = doc.tokens[run_end - 1].bytes;
    if (!text.empty()) text += '\n';
    text.append(doc.text, first.begin, last.end - first.begin);
  };
  for (const Unit& u : seq.units) {
    if (u.range.begin != run_end) {
      flush();
      run_begin = u.range.begin;
    }
    run_end = u.range.end;
  }
  flush();
  return text;
}

// Unit surfaces are derived from the original tokens, so comparing them
// catches an original that has the right length but different content.
void check_surfaces(const CompressedSequence& seq, const TokenStream& original) {
  const bool concat = seq.meta.config.coarse_surface == CoarseSurface::kConcat;
  for (const Unit& u : seq.units) {
    if (u.range.empty() || u.range.end > original.size()) continue;  // decode() reports these
    std::string expected = original[u.range.begin].surface;
    if (u.kind == UnitKind::kCoarse && concat) {
      for (std::size_t i = u.range.begin + 1; i < u.range.end; ++i) {
        expected += ' ';
        expected += original[i].surface;
      }
    }
    if (u.surface != expected) {
      throw Error(ErrorKind::kAlignment,
                  "original does not match the compressed sequence at token " +
                      std::to_string(u.range.begin));
    }
  }
}

}  // namespace

int cmd_decode(const DecodeArgs& args, std::ostream& out) {
  const CompressedSequence seq = read_sequence(args.compressed);
  const LoadedDocument doc = load_document(args.original, args.pretokenized);
  const DecodeResult result = decode(seq, doc.tokens);
  check_surfaces(seq, doc.tokens);

  std::string tokens;
  for (const Token& t : result.tokens) {
    tokens += t.surface;
    tokens += '\n';
  }
  std::filesystem::path output = args.output;
  if (output.empty()) output = args.compressed.string() + ".tokens";
  write_file(output, tokens);

  if (!args.text.empty()) {
    write_file(args.text, result.lossless() ? reassemble(doc.tokens, doc.text)
                                            : covered_text(seq, doc));
  }

  nlohmann::json gaps = nlohmann::json::array();
  std::size_t gap_tokens = 0;
  for (const TokenRange& g : result.gaps) {
    gaps.push_back({{"start", g.begin}, {"end", g.end}});
    gap_tokens += g.size();
  }
  emit_json({{"lossless", result.lossless()},
             {"n", doc.tokens.size()},
             {"units", seq.emitted()},
             {"recovered_tokens", result.tokens.size()},
             {"gap_tokens", gap_tokens},
             {"gaps", std::move(gaps)}},
            args.report, out);
  return result.lossless() ? kExitOk : kExitLossy;
}

}  // namespace semtoken::cli
