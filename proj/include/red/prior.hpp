#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "red/numerics.hpp"

namespace red {

struct PriorConfig {
  double tau = 0.1;  // softmax temperature over negated distances
  int k = 10;        // candidates per token
};

// softmax(-d / tau) in log space; the result is normalized
// (log_sum_exp == 0). Larger distances always get smaller weight.
inline std::vector<double> log_prior_weights(std::span<const int> distances, double tau) {
  if (distances.empty()) throw std::invalid_argument("prior: empty distance vector");
  if (!(tau > 0.0)) throw std::invalid_argument("prior: tau must be positive");
  std::vector<double> logits(distances.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    logits[i] = -static_cast<double>(distances[i]) / tau;
  }
  return log_softmax(logits);
}

inline std::vector<double> prior_weights(std::span<const int> distances, double tau) {
  std::vector<double> out = log_prior_weights(distances, tau);
  for (double& v : out) v = std::exp(v);
  return out;
}

}  // namespace red
