#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "semtoken/types.hpp"

namespace semtoken {

// Line-delimited JSON: one header record, then one record per unit.
//
//   {"format":"semtoken.sequence","version":1,"n":..,"units":..,"ratio":..,
//    "config":{...}}
//   {"kind":"fine"|"coarse","start":..,"end":..,"surface":"..","entropy":..}

inline constexpr int kSequenceFormatVersion = 1;

void write_sequence(std::ostream& out, const CompressedSequence& sequence);
void write_sequence(const std::filesystem::path& path, const CompressedSequence& sequence);

/// Throws Error(kFormat) on malformed records.
CompressedSequence read_sequence(std::istream& in);
CompressedSequence read_sequence(const std::filesystem::path& path);

/// JSON text of a config snapshot (same object as in the header record).
std::string config_to_json(const CompressionConfig& config);
CompressionConfig config_from_json(const std::string& json);

}  // namespace semtoken
