#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "semtoken/types.hpp"

namespace semtoken {

// SEMF embedding files:
//   bytes 0-3   "SEMF"
//   bytes 4-7   version (u32 LE) = 1
//   bytes 8-11  n (u32 LE)
//   bytes 12-15 d (u32 LE)
//   then n*d IEEE-754 binary32 LE values, row-major, nothing after.

inline constexpr std::uint32_t kSemfVersion = 1;

void write_semf(std::ostream& out, const FingerprintMatrix& matrix);
void write_semf(const std::filesystem::path& path, const FingerprintMatrix& matrix);

FingerprintMatrix read_semf(std::istream& in);

/// Reads an SEMF file and checks that it has `expected_rows` rows.
FingerprintMatrix load_embeddings(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_rows);

}  // namespace semtoken
