#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace red {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(sum_i exp(v[i])) with max shift. -inf entries contribute nothing;
// an all -inf input yields -inf.
inline double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("log_sum_exp: empty input");
  }
  double max_v = kNegInf;
  for (double v : values) {
    if (v > max_v) max_v = v;
  }
  if (std::isinf(max_v)) return max_v;
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - max_v);
  }
  return max_v + std::log(sum);
}

// logits -> normalized log probabilities (log_sum_exp of the result is 0)
inline std::vector<double> log_softmax(std::span<const double> logits) {
  double z = log_sum_exp(logits);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = logits[i] - z;
  }
  return out;
}

inline std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

}  // namespace red
