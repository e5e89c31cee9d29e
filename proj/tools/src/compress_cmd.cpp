#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "commands.hpp"
#include "io.hpp"
#include "semtoken/embedder.hpp"
#include "semtoken/pretokenize.hpp"
#include "semtoken/query.hpp"
#include "semtoken/semf.hpp"
#include "semtoken/sequence_io.hpp"

namespace semtoken::cli {

namespace {

constexpr std::size_t kHistogramBins = 32;

const char* granularity_name(Granularity g) {
  switch (g) {
    case Granularity::kFine: return "fine";
    case Granularity::kCoarse: return "coarse";
    case Granularity::kDropped: return "dropped";
    case Granularity::kUnassigned: break;
  }
  return "unassigned";
}

nlohmann::json entropy_histogram(const std::vector<Span>& spans) {
  std::vector<std::size_t> counts(kHistogramBins, 0);
  if (spans.empty()) {
    return {{"min", 0.0}, {"max", 0.0}, {"counts", counts}};
  }
  const auto [lo, hi] = std::minmax_element(spans.begin(), spans.end(),
      [](const Span& a, const Span& b) { return a.entropy < b.entropy; });
  const double min = lo->entropy;
  const double width = (hi->entropy - min) / kHistogramBins;
  for (const Span& s : spans) {
    std::size_t bin = 0;
    if (width > 0) {
      bin = std::min(kHistogramBins - 1, static_cast<std::size_t>((s.entropy - min) / width));
    }
    ++counts[bin];
  }
  return {{"min", min}, {"max", hi->entropy}, {"counts", counts}};
}

}  // namespace

Pipeline make_pipeline(const PipelineArgs& a, std::size_t n) {
  Pipeline p;
  CompressionConfig& c = p.config;
  c.tau = a.tau;
  if (a.delta && a.delta_percentile) {
    throw std::invalid_argument("--delta and --delta-percentile are mutually exclusive");
  }
  if (a.delta) c.delta = DeltaPolicy::absolute(*a.delta);
  if (a.delta_percentile) c.delta = DeltaPolicy::percentile(*a.delta_percentile);
  if (a.budget && a.ratio) {
    throw std::invalid_argument("--budget and --ratio are mutually exclusive");
  }
  c.budget = a.budget;
  if (a.ratio) {
    if (!(*a.ratio > 0.0 && *a.ratio <= 1.0)) {
      throw std::invalid_argument("--ratio must lie in (0, 1]");
    }
    const double b = std::ceil(*a.ratio * static_cast<double>(n));
    c.budget = std::max<std::size_t>(1, static_cast<std::size_t>(b));
  }
  c.window_radius = a.window_radius;
  c.histogram_bins = a.bins;
  c.max_span_width = a.span_cap;
  if (a.coarse_surface == "concat") {
    c.coarse_surface = CoarseSurface::kConcat;
  } else if (a.coarse_surface == "first_token") {
    c.coarse_surface = CoarseSurface::kFirstToken;
  } else {
    throw std::invalid_argument("unknown coarse surface: " + a.coarse_surface);
  }
  if (a.linkage == "anchor") {
    c.linkage = SpanLinkage::kAnchor;
  } else if (a.linkage == "chained") {
    c.linkage = SpanLinkage::kChained;
  } else {
    throw std::invalid_argument("unknown linkage: " + a.linkage);
  }

  const BuiltinEmbedder builtin{a.dim, a.seed, a.window_radius};
  if (a.embeddings.empty()) {
    c.embedder = BuiltinEmbedderSpec{a.dim, a.seed};
    p.provider = builtin;
  } else {
    c.embedder = ExternalEmbedderSpec{a.embeddings.string()};
    p.provider = ExternalEmbeddings{load_embeddings(a.embeddings, n)};
  }

  if (a.query) {
    QueryFilter q{*a.query, {}, a.query_threshold};
    if (!a.query_embeddings.empty()) {
      q.fingerprint = mean_pool(load_embeddings(a.query_embeddings, std::nullopt));
    } else if (!a.embeddings.empty()) {
      throw std::invalid_argument("--query with --embeddings also needs --query-embeddings");
    } else {
      q.fingerprint = query_fingerprint(builtin, pretokenize(*a.query));
    }
    c.query = std::move(q);
  } else if (!a.query_embeddings.empty()) {
    throw std::invalid_argument("--query-embeddings requires --query");
  }
  c.validate();
  return p;
}

nlohmann::json compress_report(const CompressionTrace& trace) {
  const CompressedSequence& seq = trace.sequence;
  std::size_t fine = 0, coarse = 0, covered = 0;
  for (const Unit& u : seq.units) {
    (u.kind == UnitKind::kFine ? fine : coarse) += 1;
    covered += u.range.size();
  }
  nlohmann::json profile = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.spans.size(); ++i) {
    const Span& s = trace.spans[i];
    nlohmann::json row = {{"start", s.begin},
                          {"width", s.width()},
                          {"entropy", s.entropy},
                          {"granularity", granularity_name(s.granularity)}};
    if (!trace.query_scores.empty()) row["query_score"] = trace.query_scores[i];
    profile.push_back(std::move(row));
  }
  return {{"n", seq.meta.original_tokens},
          {"m_units", seq.emitted()},
          {"emitted", seq.emitted()},
          {"fine_units", fine},
          {"coarse_units", coarse},
          {"covered_tokens", covered},
          {"r", seq.meta.ratio},
          {"span_count", trace.spans.size()},
          {"delta", trace.delta},
          {"entropy_histogram", entropy_histogram(trace.spans)},
          {"density_profile", std::move(profile)},
          {"config", nlohmann::json::parse(config_to_json(seq.meta.config))}};
}

int cmd_compress(const CompressArgs& args, std::ostream& out) {
  const LoadedDocument doc = load_document(args.input, args.pipeline.pretokenized);
  const Pipeline p = make_pipeline(args.pipeline, doc.tokens.size());
  const CompressionTrace trace = compress_traced(doc.tokens, p.provider, p.config);

  std::filesystem::path output = args.output;
  if (output.empty()) output = args.input.string() + ".semtok";
  write_sequence(output, trace.sequence);
  emit_json(compress_report(trace), args.report, out);
  return kExitOk;
}

int cmd_embed(const EmbedArgs& args, std::ostream&) {
  const LoadedDocument doc = load_document(args.input, args.pretokenized);
  write_semf(args.output, embed_tokens(doc.tokens, args.window_radius, args.dim, args.seed));
  return kExitOk;
}

}  // namespace semtoken::cli
