#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "semtoken/types.hpp"

namespace semtoken::cli {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

// Source bytes plus their token stream. Token byte ranges index `text`, so
// the struct must stay alive as long as the stream is used with it.
struct LoadedDocument {
  std::string text;
  TokenStream tokens;
};

/// Reads a raw UTF-8 text file (or a one-token-per-line file when
/// `pretokenized`) and tokenizes it. Invalid UTF-8 is a format error.
LoadedDocument load_document(const std::filesystem::path& path, bool pretokenized);

/// Writes `json` to `path`, or to `fallback` when the path is empty.
void emit_json(const nlohmann::json& json, const std::filesystem::path& path,
               std::ostream& fallback);

}  // namespace semtoken::cli
