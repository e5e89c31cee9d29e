#include "semtoken/sequence_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "semtoken/errors.hpp"

namespace semtoken {
namespace {

using nlohmann::json;

constexpr const char* kFormatName = "semtoken.sequence";

json to_json(const CompressionConfig& c) {
  json j;
  j["tau"] = c.tau;
  j["delta"] = {{"policy", c.delta.kind == DeltaPolicy::Kind::kAbsolute ? "absolute" : "percentile"},
                {"value", c.delta.value}};
  j["budget"] = c.budget ? json(*c.budget) : json(nullptr);
  j["window_radius"] = c.window_radius;
  if (const auto* b = std::get_if<BuiltinEmbedderSpec>(&c.embedder)) {
    j["embedder"] = {{"kind", "builtin"}, {"dim", b->dim}, {"seed", b->seed}};
  } else {
    j["embedder"] = {{"kind", "external"}, {"path", std::get<ExternalEmbedderSpec>(c.embedder).path}};
  }
  j["histogram_bins"] = c.histogram_bins ? json(*c.histogram_bins) : json(nullptr);
  j["coarse_surface"] = c.coarse_surface == CoarseSurface::kConcat ? "concat" : "first_token";
  j["linkage"] = c.linkage == SpanLinkage::kAnchor ? "anchor" : "chained";
  j["max_span_width"] = c.max_span_width;
  if (c.query) {
    j["query"] = {{"text", c.query->text},
                  {"threshold", c.query->threshold},
                  {"fingerprint", c.query->fingerprint}};
  } else {
    j["query"] = nullptr;
  }
  return j;
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

CompressionConfig config_from(const json& j) {
  CompressionConfig c;
  c.tau = j.at("tau").get<double>();
  const json& d = j.at("delta");
  const std::string policy = d.at("policy").get<std::string>();
  if (policy == "absolute") {
    c.delta = DeltaPolicy::absolute(d.at("value").get<double>());
  } else if (policy == "percentile") {
    c.delta = DeltaPolicy::percentile(d.at("value").get<double>());
  } else {
    throw Error(ErrorKind::kFormat, "unknown delta policy '" + policy + "'");
  }
  c.budget = optional_field<std::size_t>(j, "budget");
  c.window_radius = j.at("window_radius").get<std::size_t>();
  const json& e = j.at("embedder");
  const std::string kind = e.at("kind").get<std::string>();
  if (kind == "builtin") {
    c.embedder = BuiltinEmbedderSpec{e.at("dim").get<std::size_t>(), e.at("seed").get<std::uint64_t>()};
  } else if (kind == "external") {
    c.embedder = ExternalEmbedderSpec{e.at("path").get<std::string>()};
  } else {
    throw Error(ErrorKind::kFormat, "unknown embedder kind '" + kind + "'");
  }
  c.histogram_bins = optional_field<std::size_t>(j, "histogram_bins");
  const std::string surface = j.at("coarse_surface").get<std::string>();
  if (surface != "concat" && surface != "first_token") {
    throw Error(ErrorKind::kFormat, "unknown coarse surface '" + surface + "'");
  }
  c.coarse_surface = surface == "concat" ? CoarseSurface::kConcat : CoarseSurface::kFirstToken;
  const std::string linkage = j.at("linkage").get<std::string>();
  if (linkage != "anchor" && linkage != "chained") {
    throw Error(ErrorKind::kFormat, "unknown linkage '" + linkage + "'");
  }
  c.linkage = linkage == "anchor" ? SpanLinkage::kAnchor : SpanLinkage::kChained;
  c.max_span_width = j.at("max_span_width").get<std::size_t>();
  if (const json& q = j.at("query"); !q.is_null()) {
    c.query = QueryFilter{q.at("text").get<std::string>(),
                          q.at("fingerprint").get<std::vector<double>>(),
                          q.at("threshold").get<double>()};
  }
  return c;
}

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

}  // namespace

std::string config_to_json(const CompressionConfig& config) { return dump(to_json(config)); }

CompressionConfig config_from_json(const std::string& text) {
  try {
    return config_from(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("bad config record: ") + e.what());
  }
}

void write_sequence(std::ostream& out, const CompressedSequence& sequence) {
  json header = {{"format", kFormatName},
                 {"version", kSequenceFormatVersion},
                 {"n", sequence.meta.original_tokens},
                 {"units", sequence.units.size()},
                 {"ratio", sequence.meta.ratio},
                 {"config", to_json(sequence.meta.config)}};
  out << dump(header) << '\n';
  for (const Unit& u : sequence.units) {
    json rec = {{"kind", to_string(u.kind)},
                {"start", u.range.begin},
                {"end", u.range.end},
                {"surface", u.surface},
                {"entropy", u.entropy}};
    out << dump(rec) << '\n';
  }
  if (!out) throw Error(ErrorKind::kIo, "failed to write compressed sequence");
}

void write_sequence(const std::filesystem::path& path, const CompressedSequence& sequence) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_sequence(out, sequence);
}

CompressedSequence read_sequence(std::istream& in) {
  CompressedSequence seq;
  std::string line;
  std::size_t line_no = 0;
  auto next_record = [&](json& out) {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line == "\r") continue;
      out = json::parse(line);
      return true;
    }
    return false;
  };

  try {
    json header;
    if (!next_record(header)) throw Error(ErrorKind::kFormat, "empty compressed sequence file");
    if (header.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorKind::kFormat, "not a semtoken sequence file");
    }
    if (header.at("version").get<int>() != kSequenceFormatVersion) {
      throw Error(ErrorKind::kFormat, "unsupported sequence format version");
    }
    seq.meta.original_tokens = header.at("n").get<std::size_t>();
    seq.meta.ratio = header.at("ratio").get<double>();
    seq.meta.config = config_from(header.at("config"));
    const auto count = header.at("units").get<std::size_t>();
    seq.units.reserve(count);

    json rec;
    while (next_record(rec)) {
      Unit u;
      const std::string kind = rec.at("kind").get<std::string>();
      if (kind == "fine") {
        u.kind = UnitKind::kFine;
      } else if (kind == "coarse") {
        u.kind = UnitKind::kCoarse;
      } else {
        throw Error(ErrorKind::kFormat, "line " + std::to_string(line_no) + ": unknown unit kind '" + kind + "'");
      }
      u.range = {rec.at("start").get<std::size_t>(), rec.at("end").get<std::size_t>()};
      u.surface = rec.at("surface").get<std::string>();
      u.entropy = rec.at("entropy").get<double>();
      seq.units.push_back(std::move(u));
    }
    if (seq.units.size() != count) {
      throw Error(ErrorKind::kFormat, "header announces " + std::to_string(count) +
                                          " units, file has " + std::to_string(seq.units.size()));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kFormat,
                "line " + std::to_string(line_no) + ": malformed record: " + e.what());
  }
  return seq;
}

CompressedSequence read_sequence(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return read_sequence(in);
}

}  // namespace semtoken
