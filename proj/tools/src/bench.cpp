#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "io.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"

namespace semtoken::cli {

namespace {

using Clock = std::chrono::steady_clock;

double run_once(const TokenStream& tokens, const Pipeline& p, std::size_t iterations) {
  const auto start = Clock::now();
  for (std::size_t i = 0; i < iterations; ++i) {
    volatile std::size_t units = compress(tokens, p.provider, p.config).emitted();
    static_cast<void>(units);
  }
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TokenStream prefix(const TokenStream& tokens, std::size_t n) {
  return TokenStream(std::vector<Token>(tokens.begin(), tokens.begin() + static_cast<std::ptrdiff_t>(n)));
}

FileResult measure_ratios(const std::filesystem::path& path, const std::filesystem::path& root,
                          const PipelineArgs& args, const BenchOptions& options) {
  const LoadedDocument doc = load_document(path, args.pretokenized);
  const Pipeline p = make_pipeline(args, doc.tokens.size());
  const CompressedSequence seq = compress(doc.tokens, p.provider, p.config);
  FileResult r;
  r.name = std::filesystem::relative(path, root).generic_string();
  r.n = doc.tokens.size();
  r.units = seq.emitted();
  r.r_semtoken = seq.meta.ratio;
  r.r_stride = stride_ratio(r.n, options.stride);
  r.stride_wins = r.r_stride < r.r_semtoken;
  return r;
}

}  // namespace

double stride_ratio(std::size_t n, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  if (n == 0) return 1.0;
  return static_cast<double>((n + stride - 1) / stride) / static_cast<double>(n);
}

std::optional<double> fit_exponent(std::span<const ScalingPoint> points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (const ScalingPoint& p : points) {
    if (p.n == 0 || !(p.seconds > 0)) continue;
    const double x = std::log(static_cast<double>(p.n));
    const double y = std::log(p.seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (m < 2 || denom <= 1e-12) return std::nullopt;
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

double time_compress(const TokenStream& tokens, const Pipeline& p, const BenchOptions& options) {
  std::size_t iterations = 1;
  double elapsed = run_once(tokens, p, iterations);
  while (elapsed < options.min_sample_seconds && iterations < (1u << 20)) {
    iterations *= 2;
    elapsed = run_once(tokens, p, iterations);
  }
  double best = elapsed / static_cast<double>(iterations);
  for (std::size_t rep = 1; rep < options.repeats; ++rep) {
    best = std::min(best, run_once(tokens, p, iterations) / static_cast<double>(iterations));
  }
  return best;
}

std::vector<ScalingPoint> scaling_ladder(std::span<const std::string> texts,
                                         const PipelineArgs& args, const BenchOptions& options) {
  std::vector<ScalingPoint> points;
  if (options.scale_min == 0 || options.scale_max < options.scale_min) return points;

  std::string joined;
  for (const std::string& t : texts) {
    joined += t;
    joined += "\n\n";
  }
  const std::size_t per_copy = pretokenize(joined).size();
  if (per_copy == 0) return points;
  std::string source;
  for (std::size_t have = 0; have < options.scale_max; have += per_copy) source += joined;
  const TokenStream all = pretokenize(source);
  for (std::size_t n = options.scale_min; n <= options.scale_max; n *= 2) {
    const TokenStream tokens = prefix(all, n);
    const Pipeline p = make_pipeline(args, n);
    points.push_back({n, time_compress(tokens, p, options)});
  }
  return points;
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::kIo, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [&](const auto& a, const auto& b) {
    return std::filesystem::relative(a, dir).generic_string() <
           std::filesystem::relative(b, dir).generic_string();
  });
  return files;
}

BenchReport run_bench(const std::filesystem::path& dir, const PipelineArgs& args,
                      const BenchOptions& options) {
  if (!args.embeddings.empty()) {
    throw std::invalid_argument("bench uses the builtin embedder; --embeddings is per document");
  }
  if (options.stride == 0) throw std::invalid_argument("--stride must be positive");
  const auto files = corpus_files(dir);
  BenchReport report;
  report.files.resize(files.size());

  // Ratios are computed concurrently; results land at the file's sorted index
  // so output order does not depend on completion order.
  std::vector<std::exception_ptr> errors(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      try {
        report.files[i] = measure_ratios(files[i], dir, args, options);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, files.size()));
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Timings run one file at a time so concurrent jobs do not skew them.
  std::vector<std::string> texts;
  std::vector<ScalingPoint> per_file;
  for (std::size_t i = 0; i < files.size(); ++i) {
    LoadedDocument doc = load_document(files[i], args.pretokenized);
    const Pipeline p = make_pipeline(args, doc.tokens.size());
    report.files[i].seconds = time_compress(doc.tokens, p, options);
    per_file.push_back({report.files[i].n, report.files[i].seconds});
    texts.push_back(std::move(doc.text));
  }
  report.file_exponent = fit_exponent(per_file);
  if (!args.pretokenized) {
    report.scaling = scaling_ladder(texts, args, options);
    report.scaling_exponent = fit_exponent(report.scaling);
  }
  return report;
}

nlohmann::json to_json(const BenchReport& report, const BenchOptions& options) {
  nlohmann::json files = nlohmann::json::array();
  for (const FileResult& f : report.files) {
    files.push_back({{"file", f.name},
                     {"n", f.n},
                     {"units", f.units},
                     {"r_semtoken", f.r_semtoken},
                     {"r_stride", f.r_stride},
                     {"r_identity", f.r_identity},
                     {"stride_wins", f.stride_wins},
                     {"seconds", f.seconds}});
  }
  nlohmann::json ladder = nlohmann::json::array();
  for (const ScalingPoint& p : report.scaling) ladder.push_back({{"n", p.n}, {"seconds", p.seconds}});
  auto optional_number = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  return {{"stride", options.stride},
          {"repeats", options.repeats},
          {"files", std::move(files)},
          {"file_exponent", optional_number(report.file_exponent)},
          {"scaling", std::move(ladder)},
          {"scaling_exponent", optional_number(report.scaling_exponent)}};
}

std::string render_table(const BenchReport& report) {
  std::size_t name_width = 4;
  for (const FileResult& f : report.files) name_width = std::max(name_width, f.name.size());
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-*s %9s %10s %8s %8s %10s\n", static_cast<int>(name_width),
                "file", "n", "semtoken", "stride", "identity", "ms");
  out << line;
  for (const FileResult& f : report.files) {
    std::snprintf(line, sizeof line, "%-*s %9zu %10.4f %8.4f %8.4f %10.3f%s\n",
                  static_cast<int>(name_width), f.name.c_str(), f.n, f.r_semtoken, f.r_stride,
                  f.r_identity, f.seconds * 1e3, f.stride_wins ? "  stride wins" : "");
    out << line;
  }
  if (!report.scaling.empty()) {
    out << "\nscaling\n";
    for (const ScalingPoint& p : report.scaling) {
      std::snprintf(line, sizeof line, "%9zu tokens %10.3f ms\n", p.n, p.seconds * 1e3);
      out << line;
    }
  }
  auto exponent = [](const std::optional<double>& v) {
    return v ? std::to_string(*v) : std::string("n/a");
  };
  out << "\nfile exponent:    " << exponent(report.file_exponent) << "\n";
  out << "scaling exponent: " << exponent(report.scaling_exponent) << "\n";
  return out.str();
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  if (args.format != "text" && args.format != "json") {
    throw std::invalid_argument("--format must be text or json");
  }
  const BenchReport report = run_bench(args.corpus, args.pipeline, args.options);
  const nlohmann::json json = to_json(report, args.options);
  if (!args.report.empty()) emit_json(json, args.report, out);
  if (args.format == "json") {
    if (args.report.empty()) emit_json(json, {}, out);
  } else {
    out << render_table(report);
  }
  return kExitOk;
}

}  // namespace semtoken::cli
