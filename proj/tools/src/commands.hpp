#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "semtoken/budget.hpp"

namespace semtoken::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitFormat = 4,
  kExitAlignment = 5,
  kExitLossy = 6,  // decode succeeded but some original tokens were dropped
};

// Flags shared by every command that runs the compressor.
struct PipelineArgs {
  double tau = 0.7;
  std::optional<double> delta;
  std::optional<double> delta_percentile;
  std::optional<std::size_t> budget;
  std::optional<double> ratio;
  std::size_t window_radius = 2;
  std::size_t dim = 64;
  std::uint64_t seed = 42;
  std::optional<std::size_t> bins;
  std::filesystem::path embeddings;
  std::optional<std::string> query;
  double query_threshold = 0.0;
  std::filesystem::path query_embeddings;
  std::size_t span_cap = 0;
  bool pretokenized = false;
  std::string coarse_surface = "concat";
  std::string linkage = "anchor";
};

/// Config plus provider for one document of `n` tokens. Throws
/// std::invalid_argument for inconsistent flags.
struct Pipeline {
  CompressionConfig config;
  EmbeddingProvider provider;
};
Pipeline make_pipeline(const PipelineArgs& args, std::size_t n);

struct CompressArgs {
  std::filesystem::path input;
  std::filesystem::path output;  // default: <input>.semtok
  std::filesystem::path report;  // default: stdout
  PipelineArgs pipeline;
};

struct DecodeArgs {
  std::filesystem::path compressed;
  std::filesystem::path original;
  std::filesystem::path output;  // default: <compressed>.tokens
  std::filesystem::path text;    // optional reconstructed source bytes
  std::filesystem::path report;  // default: stdout
  bool pretokenized = false;
};

struct SimulateArgs {
  std::uint64_t n = 32768;
  std::optional<double> r;
  std::optional<std::uint64_t> n_prime;
  std::uint64_t d = 4096;
  std::uint64_t s = 2;
  std::uint64_t layers = 32;
  double g_attn = 1.0;
  bool quadratic = false;
};

struct EmbedArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::size_t window_radius = 2;
  std::size_t dim = 64;
  std::uint64_t seed = 42;
  bool pretokenized = false;
};

nlohmann::json compress_report(const CompressionTrace& trace);

int cmd_compress(const CompressArgs& args, std::ostream& out);
int cmd_decode(const DecodeArgs& args, std::ostream& out);
int cmd_simulate(const SimulateArgs& args, std::ostream& out);
int cmd_embed(const EmbedArgs& args, std::ostream& out);

}  // namespace semtoken::cli
