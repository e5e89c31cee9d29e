#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace semtoken::cli {

struct BenchOptions {
  std::size_t stride = 2;             // fixed-stride baseline merges every `stride` tokens
  std::size_t repeats = 5;            // timing samples per measurement; the minimum is kept
  double min_sample_seconds = 0.01;   // iterations per sample grow until a sample lasts this long
  std::size_t jobs = 1;               // files compressed concurrently (ratios only)
  std::size_t scale_min = 1024;       // doubling ladder for the scaling fit; 0 disables
  std::size_t scale_max = 65536;
};

struct FileResult {
  std::string name;
  std::size_t n = 0;
  std::size_t units = 0;
  double r_semtoken = 1.0;
  double r_stride = 1.0;
  double r_identity = 1.0;
  bool stride_wins = false;
  double seconds = 0.0;  // one compress() call, best of the repeats
};

struct ScalingPoint {
  std::size_t n = 0;
  double seconds = 0.0;
};

struct BenchReport {
  std::vector<FileResult> files;
  std::vector<ScalingPoint> scaling;
  std::optional<double> file_exponent;     // fit over per-file (n, time)
  std::optional<double> scaling_exponent;  // fit over the doubling ladder
};

/// ceil(n / stride) / n, or 1 for an empty document.
double stride_ratio(std::size_t n, std::size_t stride);

/// Least-squares slope of log(seconds) against log(n). Needs two distinct
/// sizes with positive times.
std::optional<double> fit_exponent(std::span<const ScalingPoint> points);

/// Best per-call wall time of compress() on `tokens`.
double time_compress(const TokenStream& tokens, const Pipeline& pipeline,
                     const BenchOptions& options);

/// Times compress() on prefixes of size scale_min, 2*scale_min, ...,
/// scale_max drawn from the concatenation of `texts` (repeated as needed).
std::vector<ScalingPoint> scaling_ladder(std::span<const std::string> texts,
                                         const PipelineArgs& args, const BenchOptions& options);

/// Regular files under `dir`, ordered by relative path.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

BenchReport run_bench(const std::filesystem::path& dir, const PipelineArgs& args,
                      const BenchOptions& options);

nlohmann::json to_json(const BenchReport& report, const BenchOptions& options);
std::string render_table(const BenchReport& report);

struct BenchArgs {
  std::filesystem::path corpus;
  std::filesystem::path report;  // JSON report; default: printed when --format json
  std::string format = "text";
  BenchOptions options;
  PipelineArgs pipeline;
};

int cmd_bench(const BenchArgs& args, std::ostream& out);

}  // namespace semtoken::cli
