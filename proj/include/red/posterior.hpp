#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "red/fuzzy_index.hpp"
#include "red/numerics.hpp"
#include "red/scorer.hpp"

namespace red {

// The robust embedding of one token: a normalized distribution over its
// candidate corrections, kept in log space.
struct TokenPosterior {
  CandidateSet candidates;
  std::vector<double> log_prior;       // normalized over the candidates
  std::vector<double> log_likelihood;  // raw contextual log scores
  std::vector<double> log_posterior;   // normalized product of the two

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }

  // argmax of log_posterior; exact ties resolve to the lower candidate
  // index, i.e. the better (distance, freq_rank, word) ordering
  int map_index() const {
    if (log_posterior.empty()) return -1;
    int best = 0;
    for (std::size_t i = 1; i < log_posterior.size(); ++i) {
      if (log_posterior[i] > log_posterior[best]) best = static_cast<int>(i);
    }
    return best;
  }

  int map_word_id() const {
    int idx = map_index();
    return idx < 0 ? -1 : candidates.candidates[idx].word_id;
  }
};

// The additive core shared by the Bayes-rule and product-of-experts paths:
// both reduce to per-candidate log_prior + log_likelihood before
// renormalization.
inline std::vector<double> combine_log_prior_likelihood(std::span<const double> log_prior,
                                                        std::span<const double> log_likelihood) {
  if (log_prior.size() != log_likelihood.size()) {
    throw std::invalid_argument("combine: prior/likelihood length mismatch");
  }
  std::vector<double> out(log_prior.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = log_prior[i] + log_likelihood[i];
  }
  return out;
}

// Multiply-and-renormalize in log space. The prior must already be
// normalized over the candidates; the scorer supplies one finite log score
// per candidate.
inline TokenPosterior posterior(CandidateSet candidates, std::vector<double> log_prior,
                                const ContextualScorer& scorer, const ScoreQuery& query) {
  if (candidates.empty()) throw std::invalid_argument("posterior: empty candidate set");
  if (log_prior.size() != candidates.size()) {
    throw std::invalid_argument("posterior: prior length mismatch");
  }
  std::vector<double> log_likelihood;
  try {
    log_likelihood = scorer.score(query);
  } catch (const std::exception& e) {
    throw std::runtime_error("posterior: scorer '" + scorer.name() + "' failed for token '" +
                             candidates.query + "' at sentence " +
                             std::to_string(query.sentence_index) + " position " +
                             std::to_string(query.token_index) + ": " + e.what());
  }
  if (log_likelihood.size() != candidates.size()) {
    throw std::runtime_error("posterior: scorer returned " +
                             std::to_string(log_likelihood.size()) + " scores for " +
                             std::to_string(candidates.size()) + " candidates");
  }
  std::vector<double> unnorm = combine_log_prior_likelihood(log_prior, log_likelihood);
  std::vector<double> log_post = log_softmax(unnorm);
  return TokenPosterior{std::move(candidates), std::move(log_prior), std::move(log_likelihood),
                        std::move(log_post)};
}

// Distribution with all mass on one known word; pass-through tokens reuse
// the whole posterior machinery this way.
inline TokenPosterior degenerate_posterior(std::string token, int word_id) {
  CandidateSet cs{std::move(token), {Candidate{word_id, 0}}};
  return TokenPosterior{std::move(cs), {0.0}, {0.0}, {0.0}};
}

// No candidates at all: the surface form survives and downstream consumers
// see the zero vector.
inline TokenPosterior empty_posterior(std::string token) {
  return TokenPosterior{CandidateSet{std::move(token), {}}, {}, {}, {}};
}

}  // namespace red
