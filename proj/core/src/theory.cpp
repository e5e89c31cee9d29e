#include "semtoken/theory.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace semtoken::theory {
namespace {

void check_ratio(double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("compression ratio must lie in (0, 1]");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("KV byte count overflows u64");
  return out;
}

}  // namespace

void CostModel::validate() const {
  if (n_prime < 1 || n_prime > n) throw std::invalid_argument("need 1 <= n' <= n");
  if (hidden_dim < 1 || element_bytes < 1 || layers < 1) {
    throw std::invalid_argument("hidden dim, element size and layer count must be >= 1");
  }
  if (!(attention_gain >= 1.0) || !std::isfinite(attention_gain)) {
    throw std::invalid_argument("attention gain must be finite and >= 1");
  }
}

double compression_ratio(std::uint64_t n, std::uint64_t n_prime) {
  if (n < 1 || n_prime < 1 || n_prime > n) throw std::invalid_argument("need 1 <= n' <= n");
  return static_cast<double>(n_prime) / static_cast<double>(n);
}

double compute_gain(double r, CostScaling scaling) {
  check_ratio(r);
  return scaling == CostScaling::kLinear ? 1.0 / r : 1.0 / (r * r);
}

double memory_gain(double r) {
  check_ratio(r);
  return 1.0 / r;
}

double stacked_speedup(double r, double attention_gain, CostScaling scaling) {
  if (!(attention_gain >= 1.0)) throw std::invalid_argument("attention gain must be >= 1");
  return compute_gain(r, scaling) * attention_gain;
}

std::uint64_t kv_bytes(std::uint64_t n, std::uint64_t hidden_dim, std::uint64_t element_bytes,
                       std::uint64_t layers) {
  if (n < 1 || hidden_dim < 1 || element_bytes < 1 || layers < 1) {
    throw std::invalid_argument("kv_bytes arguments must be >= 1");
  }
  return checked_mul(checked_mul(checked_mul(checked_mul(2, n), hidden_dim), element_bytes), layers);
}

double kv_ratio(std::uint64_t n, std::uint64_t n_prime) { return compression_ratio(n, n_prime); }

CostReport evaluate(const CostModel& model, CostScaling scaling) {
  model.validate();
  const double r = compression_ratio(model.n, model.n_prime);
  const std::uint64_t original = kv_bytes(model.n, model.hidden_dim, model.element_bytes, model.layers);
  const std::uint64_t compressed =
      kv_bytes(model.n_prime, model.hidden_dim, model.element_bytes, model.layers);
  return {
      r,
      compute_gain(r, scaling),
      memory_gain(r),
      stacked_speedup(r, model.attention_gain, scaling),
      original,
      compressed,
      static_cast<double>(compressed) / static_cast<double>(original),
  };
}

}  // namespace semtoken::theory
