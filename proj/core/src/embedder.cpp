#include "semtoken/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "semtoken/errors.hpp"

namespace semtoken {
namespace {

constexpr double kNormFloor = 1e-12;
constexpr std::string_view kPadSymbol = "\x02<pad>";

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t feature_hash(char tag, std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix64(seed);
  h = (h ^ static_cast<unsigned char>(tag)) * 0x100000001b3ULL;
  for (unsigned char c : bytes) h = (h ^ c) * 0x100000001b3ULL;
  return mix64(h);
}

void add_feature(std::vector<double>& v, char tag, std::string_view bytes, std::uint64_t seed) {
  const std::uint64_t h = feature_hash(tag, bytes, seed);
  const std::size_t bucket = static_cast<std::size_t>(h % v.size());
  v[bucket] += (h >> 63) ? -1.0 : 1.0;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void validate_params(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("embedding dimension must be at least 2");
}

// Writes rows [begin, end) into `out`, which points at row `begin`.
void embed_rows(const TokenStream& stream, std::size_t k, std::size_t dim, std::uint64_t seed,
                std::size_t begin, std::size_t end, double* out) {
  const std::size_t n = stream.size();
  const std::size_t lo = begin >= k ? begin - k : 0;
  const std::size_t hi = std::min(n, end + k);

  std::vector<std::vector<double>> base;
  base.reserve(hi - lo);
  for (std::size_t j = lo; j < hi; ++j) base.push_back(hash_surface(stream[j].surface, dim, seed));
  const std::vector<double> pad = hash_surface(kPadSymbol, dim, seed);

  const auto ik = static_cast<std::ptrdiff_t>(k);
  const auto in = static_cast<std::ptrdiff_t>(n);
  for (std::size_t i = begin; i < end; ++i) {
    double* row = out + (i - begin) * dim;
    std::fill(row, row + dim, 0.0);
    const auto ii = static_cast<std::ptrdiff_t>(i);
    for (std::ptrdiff_t j = ii - ik; j <= ii + ik; ++j) {
      const double w = 1.0 / (1.0 + static_cast<double>(std::abs(j - ii)));
      const std::vector<double>& v =
          (j < 0 || j >= in) ? pad : base[static_cast<std::size_t>(j) - lo];
      for (std::size_t c = 0; c < dim; ++c) row[c] += w * v[c];
    }
    const double nrm = norm({row, dim});
    if (nrm < kNormFloor) {
      std::fill(row, row + dim, 0.0);
      row[0] = 1.0;
    } else {
      for (std::size_t c = 0; c < dim; ++c) row[c] /= nrm;
    }
  }
}

}  // namespace

std::vector<double> hash_surface(std::string_view surface, std::size_t dim, std::uint64_t seed) {
  validate_params(dim);
  std::vector<double> v(dim, 0.0);
  add_feature(v, 'w', surface, seed);
  for (std::size_t i = 0; i + 3 <= surface.size(); ++i) add_feature(v, 'g', surface.substr(i, 3), seed);

  double nrm = norm(v);
  if (nrm < kNormFloor) {
    // every gram cancelled out; fall back to the whole-surface feature
    std::fill(v.begin(), v.end(), 0.0);
    add_feature(v, 'w', surface, seed);
    nrm = 1.0;
  }
  for (double& x : v) x /= nrm;
  return v;
}

FingerprintMatrix embed_block(const TokenStream& stream, std::size_t window_radius,
                              std::size_t dim, std::uint64_t seed, std::size_t begin,
                              std::size_t end) {
  validate_params(dim);
  if (begin > end || end > stream.size()) throw std::out_of_range("embed block out of range");
  std::vector<double> data((end - begin) * dim);
  embed_rows(stream, window_radius, dim, seed, begin, end, data.data());
  return FingerprintMatrix(end - begin, dim, std::move(data));
}

FingerprintMatrix embed_tokens(const TokenStream& stream, std::size_t window_radius,
                               std::size_t dim, std::uint64_t seed, const EmbedOptions& options) {
  validate_params(dim);
  const std::size_t n = stream.size();
  std::vector<double> data(n * dim);
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);
  const std::size_t blocks = (n + stride - 1) / stride;
  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(blocks, 1));

  auto run = [&](std::size_t worker) {
    for (std::size_t b = worker; b < blocks; b += workers) {
      const std::size_t begin = b * stride;
      const std::size_t end = std::min(n, begin + stride);
      embed_rows(stream, window_radius, dim, seed, begin, end, data.data() + begin * dim);
    }
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  return FingerprintMatrix(n, dim, std::move(data));
}

FingerprintMatrix fingerprints(const EmbeddingProvider& provider, const TokenStream& stream,
                               const EmbedOptions& options) {
  if (const auto* b = std::get_if<BuiltinEmbedder>(&provider)) {
    return embed_tokens(stream, b->window_radius, b->dim, b->seed, options);
  }
  const auto& ext = std::get<ExternalEmbeddings>(provider);
  if (ext.matrix.rows() != stream.size()) {
    throw Error(ErrorKind::kAlignment,
                "embedding file has " + std::to_string(ext.matrix.rows()) +
                    " rows but the token stream has " + std::to_string(stream.size()) +
                    " tokens");
  }
  return ext.matrix;
}

double cosine_sim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cosine_sim: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (na < kNormFloor || nb < kNormFloor) return 0.0;
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<double> mean_pool(const FingerprintMatrix& fp) {
  if (fp.empty()) return {};
  std::vector<double> mean(fp.dim(), 0.0);
  for (std::size_t i = 0; i < fp.rows(); ++i) {
    const auto r = fp.row(i);
    for (std::size_t c = 0; c < fp.dim(); ++c) mean[c] += r[c];
  }
  for (double& x : mean) x /= static_cast<double>(fp.rows());
  return mean;
}

}  // namespace semtoken
