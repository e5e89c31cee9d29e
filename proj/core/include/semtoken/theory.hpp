#pragma once

#include <cstdint>

namespace semtoken::theory {

// Closed-form cost model for compressed sequences. Attention compute and KV
// memory are taken to scale linearly with sequence length unless the
// quadratic model is requested explicitly.

enum class CostScaling { kLinear, kQuadratic };

struct CostModel {
  std::uint64_t n = 1;        // original tokens
  std::uint64_t n_prime = 1;  // compressed tokens
  std::uint64_t hidden_dim = 4096;
  std::uint64_t element_bytes = 2;
  std::uint64_t layers = 32;
  double attention_gain = 1.0;

  void validate() const;
};

double compression_ratio(std::uint64_t n, std::uint64_t n_prime);

/// n / n' = 1/r (or 1/r^2 under kQuadratic).
double compute_gain(double r, CostScaling scaling = CostScaling::kLinear);
double memory_gain(double r);

/// Token-level gain times an independent attention-kernel gain.
double stacked_speedup(double r, double attention_gain,
                       CostScaling scaling = CostScaling::kLinear);

/// KV-cache bytes: 2 * n * d * s per layer, summed over layers.
std::uint64_t kv_bytes(std::uint64_t n, std::uint64_t hidden_dim,
                       std::uint64_t element_bytes, std::uint64_t layers);

/// M_compressed / M_original for n' retained tokens out of n.
double kv_ratio(std::uint64_t n, std::uint64_t n_prime);

struct CostReport {
  double ratio;
  double compute_gain;
  double memory_gain;
  double stacked_speedup;
  std::uint64_t kv_bytes_original;
  std::uint64_t kv_bytes_compressed;
  double kv_ratio;
};

CostReport evaluate(const CostModel& model, CostScaling scaling = CostScaling::kLinear);

}  // namespace semtoken::theory
