#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "commands.hpp"
#include "semtoken/theory.hpp"

namespace semtoken::cli {

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  using namespace semtoken::theory;
  if (a.r && a.n_prime) throw std::invalid_argument("--r and --n-prime are mutually exclusive");
  if (a.n == 0) throw std::invalid_argument("--n must be positive");

  // With --r the gains use r exactly; n' (for KV accounting) is r*n rounded.
  double r = 1.0;
  std::uint64_t n_prime = a.n;
  if (a.r) {
    r = *a.r;
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("--r must lie in (0, 1]");
    n_prime = std::clamp<std::uint64_t>(
        static_cast<std::uint64_t>(std::llround(r * static_cast<double>(a.n))), 1, a.n);
  } else if (a.n_prime) {
    n_prime = *a.n_prime;
    r = compression_ratio(a.n, n_prime);
  }
  const CostModel model{a.n, n_prime, a.d, a.s, a.layers, a.g_attn};
  model.validate();
  const CostScaling scaling = a.quadratic ? CostScaling::kQuadratic : CostScaling::kLinear;

  const std::uint64_t original = kv_bytes(a.n, a.d, a.s, a.layers);
  const std::uint64_t compressed = kv_bytes(n_prime, a.d, a.s, a.layers);
  const nlohmann::json report = {
      {"n", a.n},
      {"n_prime", n_prime},
      {"r", r},
      {"scaling", a.quadratic ? "quadratic" : "linear"},
      {"compute_gain", compute_gain(r, scaling)},
      {"memory_gain", memory_gain(r)},
      {"attention_gain", a.g_attn},
      {"stacked_speedup", stacked_speedup(r, a.g_attn, scaling)},
      {"hidden_dim", a.d},
      {"element_bytes", a.s},
      {"layers", a.layers},
      {"kv_bytes", original},
      {"kv_bytes_compressed", compressed},
      {"kv_gib", static_cast<double>(original) / static_cast<double>(1ULL << 30)},
      {"kv_ratio", kv_ratio(a.n, n_prime)}};
  out << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace semtoken::cli
