#include "io.hpp"

#include <fstream>
#include <iterator>
#include <ostream>

#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"

namespace semtoken::cli {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot create " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
}

LoadedDocument load_document(const std::filesystem::path& path, bool pretokenized) {
  LoadedDocument doc{read_file(path), {}};
  if (!is_valid_utf8(doc.text)) {
    throw Error(ErrorKind::kFormat, path.string() + " is not valid UTF-8");
  }
  doc.tokens = pretokenized ? parse_pretokenized(doc.text) : pretokenize(doc.text);
  return doc;
}

void emit_json(const nlohmann::json& json, const std::filesystem::path& path,
               std::ostream& fallback) {
  const std::string text = json.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  if (path.empty()) {
    fallback << text;
  } else {
    write_file(path, text);
  }
}

}  // namespace semtoken::cli
