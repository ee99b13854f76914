#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "red/posterior.hpp"
#include "red/rng.hpp"
#include "red/vocab.hpp"

namespace red {

// One embedded sentence: a ground center vector (or the zero vector for
// unknowns) per token position.
struct EmbeddedSequence {
  Matrix vectors;  // l x dim

  Eigen::Index length() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }
};

// m sampled sequences plus the candidate ids that produced them
// (id -1 marks a position with no candidates).
struct EnsembleBatch {
  std::vector<EmbeddedSequence> sequences;
  std::vector<std::vector<int>> sample_ids;  // m x l
};

// m downstream outputs, one row per ensemble member.
struct LogitsMatrix {
  Matrix values;  // m x c
};

// Highest-posterior vector per position; posterior ties resolve to the
// lower candidate index.
inline EmbeddedSequence map_embedding(std::span<const TokenPosterior> posteriors,
                                      const EmbeddingTable& tables) {
  Matrix vectors = Matrix::Zero(static_cast<Eigen::Index>(posteriors.size()), tables.dim());
  for (std::size_t i = 0; i < posteriors.size(); ++i) {
    int id = posteriors[i].map_word_id();
    if (id >= 0) vectors.row(static_cast<Eigen::Index>(i)) = tables.center.row(id);
  }
  return EmbeddedSequence{std::move(vectors)};
}

// Inverse-CDF draw over exp(log_posterior) in candidate order.
inline int sample_candidate_index(const TokenPosterior& posterior, double u) {
  double cum = 0.0;
  int last = static_cast<int>(posterior.size()) - 1;
  for (int i = 0; i <= last; ++i) {
    cum += std::exp(posterior.log_posterior[i]);
    if (u < cum) return i;
  }
  return last;  // cumulative rounding slop
}

// Draws m sequences. Sample (token i, member j) of sentence s owns the
// stream derived from (seed, s, i, j), so results are bit-identical across
// runs and any parallel schedule.
inline EnsembleBatch sample_ensemble(std::span<const TokenPosterior> posteriors,
                                     const EmbeddingTable& tables, int m, std::uint64_t seed,
                                     long sentence_index) {
  if (m < 1) throw std::invalid_argument("sample_ensemble: m must be >= 1");
  const std::size_t l = posteriors.size();
  EnsembleBatch batch;
  batch.sequences.reserve(m);
  batch.sample_ids.assign(m, std::vector<int>(l, -1));
  for (int j = 0; j < m; ++j) {
    Matrix vectors = Matrix::Zero(static_cast<Eigen::Index>(l), tables.dim());
    for (std::size_t i = 0; i < l; ++i) {
      const TokenPosterior& post = posteriors[i];
      if (post.empty()) continue;
      SplitMix64 rng(derive_stream(seed, {static_cast<std::uint64_t>(sentence_index),
                                          static_cast<std::uint64_t>(i),
                                          static_cast<std::uint64_t>(j)}));
      int idx = sample_candidate_index(post, rng.next_unit());
      int word_id = post.candidates.candidates[idx].word_id;
      batch.sample_ids[j][i] = word_id;
      vectors.row(static_cast<Eigen::Index>(i)) = tables.center.row(word_id);
    }
    batch.sequences.push_back(EmbeddedSequence{std::move(vectors)});
  }
  return batch;
}

// Column-wise arithmetic mean then argmax (ties to the lowest class).
// Each column is summed in sorted value order, so the result is exactly
// invariant under row permutations.
inline std::pair<Vector, int> aggregate_mean_logits(const LogitsMatrix& logits) {
  const Eigen::Index m = logits.values.rows();
  const Eigen::Index c = logits.values.cols();
  if (m < 1 || c < 2) throw std::invalid_argument("aggregate: need m >= 1 rows, c >= 2 columns");
  Vector mean(c);
  std::vector<double> column(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < c; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) column[static_cast<std::size_t>(i)] = logits.values(i, j);
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    mean[j] = sum / static_cast<double>(m);
  }
  int best = 0;
  for (Eigen::Index j = 1; j < c; ++j) {
    if (mean[j] > mean[best]) best = static_cast<int>(j);
  }
  return {std::move(mean), best};
}

inline int row_argmax(const Matrix& values, Eigen::Index row) {
  int best = 0;
  for (Eigen::Index j = 1; j < values.cols(); ++j) {
    if (values(row, j) > values(row, best)) best = static_cast<int>(j);
  }
  return best;
}

// Per-row argmax, then the modal class; all ties to the lowest index.
inline int aggregate_majority(const LogitsMatrix& logits) {
  const Eigen::Index m = logits.values.rows();
  const Eigen::Index c = logits.values.cols();
  if (m < 1 || c < 2) throw std::invalid_argument("aggregate: need m >= 1 rows, c >= 2 columns");
  std::vector<int> counts(static_cast<std::size_t>(c), 0);
  for (Eigen::Index i = 0; i < m; ++i) {
    ++counts[static_cast<std::size_t>(row_argmax(logits.values, i))];
  }
  int best = 0;
  for (int j = 1; j < static_cast<int>(c); ++j) {
    if (counts[j] > counts[best]) best = j;
  }
  return best;
}

}  // namespace red
