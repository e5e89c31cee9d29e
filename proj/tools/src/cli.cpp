#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>

#include "bench.hpp"
#include "commands.hpp"
#include "semtoken/errors.hpp"

namespace semtoken::cli {

namespace {

void add_pipeline_flags(CLI::App& cmd, PipelineArgs& a) {
  cmd.add_option("--tau", a.tau, "span similarity threshold in [-1, 1]")->capture_default_str();
  auto* delta = cmd.add_option("--delta", a.delta, "absolute entropy threshold");
  auto* pct = cmd.add_option("--delta-percentile", a.delta_percentile,
                             "entropy threshold as a percentile of span entropies (default 60)");
  delta->excludes(pct);
  auto* budget = cmd.add_option("--budget", a.budget, "maximum emitted units");
  auto* ratio = cmd.add_option("--ratio", a.ratio, "target ratio; budget = ceil(ratio * n)");
  budget->excludes(ratio);
  cmd.add_option("--window-radius", a.window_radius, "fingerprint window radius k")
      ->capture_default_str();
  cmd.add_option("--dim", a.dim, "builtin fingerprint dimension")->capture_default_str();
  cmd.add_option("--seed", a.seed, "builtin fingerprint seed")->capture_default_str();
  cmd.add_option("--bins", a.bins, "quantize similarity scores into this many bins (e.g. 256)");
  cmd.add_option("--embeddings", a.embeddings, "SEMF file with one row per token");
  cmd.add_option("--query", a.query, "drop spans dissimilar to this query text");
  cmd.add_option("--query-threshold", a.query_threshold, "minimum query similarity")
      ->capture_default_str();
  cmd.add_option("--query-embeddings", a.query_embeddings,
                 "SEMF rows of the query (mean-pooled); needed with --embeddings");
  cmd.add_option("--span-cap", a.span_cap, "maximum span width, 0 for none")
      ->capture_default_str();
  cmd.add_flag("--pretokenized", a.pretokenized, "input holds one token per line");
  cmd.add_option("--coarse-surface", a.coarse_surface, "concat | first_token")
      ->capture_default_str();
  cmd.add_option("--linkage", a.linkage, "anchor | chained")->capture_default_str();
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitIo;
    case ErrorKind::kAlignment: return kExitAlignment;
    case ErrorKind::kFormat:
    case ErrorKind::kData:
    case ErrorKind::kCorruption: return kExitFormat;
  }
  return kExitFailure;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic-aware token compression", "semtoken"};
  app.require_subcommand(1);
  std::function<int()> action;

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "compress a text file into a unit sequence");
  c->add_option("input", compress.input, "input text file")->required();
  c->add_option("-o,--output", compress.output, "compressed sequence (default <input>.semtok)");
  c->add_option("--report", compress.report, "JSON report path (default stdout)");
  add_pipeline_flags(*c, compress.pipeline);
  c->callback([&] { action = [&] { return cmd_compress(compress, out); }; });

  DecodeArgs decode;
  auto* d = app.add_subcommand("decode", "expand a compressed sequence back into tokens");
  d->add_option("compressed", decode.compressed, "compressed sequence file")->required();
  d->add_option("original", decode.original, "original input file")->required();
  d->add_option("-o,--output", decode.output, "token file, one per line (default <compressed>.tokens)");
  d->add_option("--text", decode.text, "also write the reconstructed source bytes");
  d->add_option("--report", decode.report, "JSON gap report path (default stdout)");
  d->add_flag("--pretokenized", decode.pretokenized, "original holds one token per line");
  d->callback([&] { action = [&] { return cmd_decode(decode, out); }; });

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "evaluate the closed-form cost model");
  s->add_option("--n", sim.n, "original tokens")->capture_default_str();
  auto* r = s->add_option("--r", sim.r, "compression ratio");
  auto* np = s->add_option("--n-prime", sim.n_prime, "compressed tokens");
  r->excludes(np);
  s->add_option("--d", sim.d, "hidden dimension")->capture_default_str();
  s->add_option("--s", sim.s, "bytes per element")->capture_default_str();
  s->add_option("--layers", sim.layers, "layer count")->capture_default_str();
  s->add_option("--g-attn", sim.g_attn, "attention kernel speedup")->capture_default_str();
  s->add_flag("--quadratic", sim.quadratic, "use 1/r^2 compute gain instead of 1/r");
  s->callback([&] { action = [&] { return cmd_simulate(sim, out); }; });

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "compare against stride and identity baselines");
  b->add_option("corpus", bench.corpus, "directory of text files")->required();
  b->add_option("--report", bench.report, "JSON report path");
  b->add_option("--format", bench.format, "text | json")->capture_default_str();
  b->add_option("--stride", bench.options.stride, "baseline stride w")->capture_default_str();
  b->add_option("--repeats", bench.options.repeats, "timing repeats")->capture_default_str();
  b->add_option("--min-sample-ms", [&](const CLI::results_t& v) {
    bench.options.min_sample_seconds = std::stod(v.front()) / 1e3;
    return true;
  }, "minimum duration of one timing sample");
  b->add_option("--jobs", bench.options.jobs, "files processed concurrently")->capture_default_str();
  b->add_option("--scale-min", bench.options.scale_min, "smallest ladder size, 0 to skip")
      ->capture_default_str();
  b->add_option("--scale-max", bench.options.scale_max, "largest ladder size")->capture_default_str();
  add_pipeline_flags(*b, bench.pipeline);
  b->callback([&] { action = [&] { return cmd_bench(bench, out); }; });

  EmbedArgs embed;
  auto* e = app.add_subcommand("embed", "write builtin fingerprints as an SEMF file");
  e->add_option("input", embed.input, "input text file")->required();
  e->add_option("-o,--output", embed.output, "SEMF output")->required();
  e->add_option("--window-radius", embed.window_radius)->capture_default_str();
  e->add_option("--dim", embed.dim)->capture_default_str();
  e->add_option("--seed", embed.seed)->capture_default_str();
  e->add_flag("--pretokenized", embed.pretokenized);
  e->callback([&] { action = [&] { return cmd_embed(embed, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const Error& ex) {
    err << "semtoken: " << to_string(ex.kind()) << " error: " << ex.what() << "\n";
    return exit_code(ex.kind());
  } catch (const std::invalid_argument& ex) {
    err << "semtoken: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "semtoken: " << ex.what() << "\n";
    return kExitIo;
  } catch (const std::exception& ex) {
    err << "semtoken: " << ex.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace semtoken::cli
