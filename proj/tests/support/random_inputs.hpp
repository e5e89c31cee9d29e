#pragma once

#include <random>
#include <vector>

#include "semtoken/types.hpp"

namespace semtoken::testing {

// Gaussian rows; with probability `repeat_p` a row copies its predecessor
// (possibly with a tiny jitter) so that random matrices contain real merges.
inline std::vector<std::vector<double>> random_rows(std::mt19937_64& rng, std::size_t n,
                                                    std::size_t d, double repeat_p = 0.3) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(d);
    if (i > 0 && u(rng) < repeat_p) {
      r = rows.back();
      if (u(rng) < 0.5) for (double& x : r) x += 0.05 * g(rng);
    } else {
      for (double& x : r) x = g(rng);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

inline FingerprintMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                       double repeat_p = 0.3) {
  if (n == 0) return FingerprintMatrix(0, d);
  return FingerprintMatrix::from_rows(random_rows(rng, n, d, repeat_p));
}

}  // namespace semtoken::testing
