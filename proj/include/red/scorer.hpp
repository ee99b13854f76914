#pragma once

#include <fstream>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "red/numerics.hpp"
#include "red/rng.hpp"
#include "red/vocab.hpp"

namespace red {

// One masked position to score: which candidates, against which context.
struct ScoreQuery {
  long sentence_index = 0;
  int token_index = 0;
  std::span<const int> candidate_ids;
  std::span<const int> context_ids;        // in-vocabulary context tokens only
  std::span<const int> context_positions;  // parallel to context_ids
};

// Contextual likelihood contract: finite log scores, one per candidate,
// order-parallel to the query's candidate ids.
class ContextualScorer {
 public:
  virtual ~ContextualScorer() = default;
  virtual std::vector<double> score(const ScoreQuery& query) const = 0;
  virtual std::string name() const = 0;
};

// Flat likelihood; the posterior then reduces to the prior.
class UniformScorer final : public ContextualScorer {
 public:
  std::vector<double> score(const ScoreQuery& query) const override {
    return std::vector<double>(query.candidate_ids.size(), 0.0);
  }
  std::string name() const override { return "uniform"; }
};

// Per-context-word log likelihood of the candidate's center vector against
// the context table:
//   sum_c [ c.w - log sum_{c' in table} exp(c'.w) ]
// The normalizer is computed once per candidate over the full context
// matrix, max-shifted. Empty context scores 0 (the empty product).
inline double skipgram_log_likelihood(const EmbeddingTable& tables, int candidate_id,
                                      std::span<const int> context_ids) {
  if (!tables.has_context) {
    throw std::runtime_error("skip-gram likelihood requires a context table");
  }
  if (context_ids.empty()) return 0.0;
  Vector w = tables.center.row(candidate_id);
  Vector dots = tables.context * w;
  double log_z = log_sum_exp(std::span<const double>(dots.data(), dots.size()));
  double sum = 0.0;
  for (int id : context_ids) sum += dots[id];
  return sum - static_cast<double>(context_ids.size()) * log_z;
}

// Skip-gram scorer over the store's center/context tables. Per-candidate
// normalizers are memoized, guarded by a mutex so concurrent scoring stays
// safe; cached values are identical regardless of query order.
//
// normalizer_sample > 0 replaces the exact normalizer with a fixed seeded
// pool of that many context rows (importance-corrected), for vocabularies
// too large to sum exactly.
class SkipgramScorer final : public ContextualScorer {
 public:
  explicit SkipgramScorer(const EmbeddingStore& store, int normalizer_sample = 0,
                          std::uint64_t pool_seed = 0)
      : store_(&store) {
    if (!store.has_context()) {
      throw std::runtime_error("skip-gram likelihood requires a context table");
    }
    const int n = store.vocab().size();
    if (normalizer_sample > 0 && normalizer_sample < n) {
      // seeded partial Fisher-Yates: the first normalizer_sample entries of a
      // shuffled id range
      std::vector<int> ids(n);
      for (int i = 0; i < n; ++i) ids[i] = i;
      SplitMix64 rng(derive_stream(pool_seed, {0x706f6f6cULL}));  // "pool"
      for (int i = 0; i < normalizer_sample; ++i) {
        int j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(ids[i], ids[j]);
      }
      ids.resize(normalizer_sample);
      pool_ = std::move(ids);
      pool_log_correction_ = std::log(static_cast<double>(n) / normalizer_sample);
    }
  }

  double log_likelihood(int candidate_id, std::span<const int> context_ids) const {
    if (context_ids.empty()) return 0.0;
    const EmbeddingTable& t = store_->tables();
    double lz = log_z(candidate_id);
    Vector w = t.center.row(candidate_id);
    double sum = 0.0;
    for (int id : context_ids) sum += t.context.row(id).dot(w);
    return sum - static_cast<double>(context_ids.size()) * lz;
  }

  std::vector<double> score(const ScoreQuery& query) const override {
    std::vector<double> out;
    out.reserve(query.candidate_ids.size());
    for (int id : query.candidate_ids) {
      out.push_back(log_likelihood(id, query.context_ids));
    }
    return out;
  }

  std::string name() const override { return "skipgram"; }

 private:
  double log_z(int candidate_id) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(candidate_id);
      if (it != cache_.end()) return it->second;
    }
    const EmbeddingTable& t = store_->tables();
    Vector w = t.center.row(candidate_id);
    double lz;
    if (pool_.empty()) {
      Vector dots = t.context * w;
      lz = log_sum_exp(std::span<const double>(dots.data(), dots.size()));
    } else {
      std::vector<double> dots;
      dots.reserve(pool_.size());
      for (int id : pool_) dots.push_back(t.context.row(id).dot(w));
      lz = log_sum_exp(dots) + pool_log_correction_;
    }
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(candidate_id, lz);
    return lz;
  }

  const EmbeddingStore* store_;
  std::vector<int> pool_;
  double pool_log_correction_ = 0.0;
  mutable std::mutex mu_;
  mutable std::unordered_map<int, double> cache_;
};

// Scores read from a file of precomputed entries, one per line:
//   sentence_index<TAB>token_index<TAB>word<TAB>log_score
// Missing entries score kMissingScore (a large negative stand-in for -inf,
// so a candidate set with no stored scores still normalizes to its prior).
class FileScorer final : public ContextualScorer {
 public:
  static constexpr double kMissingScore = -1e9;

  static FileScorer load(const std::string& path, const Vocabulary& vocab) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    FileScorer scorer;
    scorer.vocab_ = &vocab;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = detail::chomp_cr(line);
      if (view.empty()) continue;
      auto fields = detail::split_fields(view, '\t');
      if (fields.size() != 4) {
        throw ParseError(path, line_no,
                         "expected 'sentence<TAB>token<TAB>word<TAB>log_score'");
      }
      long sentence = detail::parse_long(fields[0], path, line_no);
      long token = detail::parse_long(fields[1], path, line_no);
      if (fields[2].empty()) throw ParseError(path, line_no, "empty word");
      double value = detail::parse_double(fields[3], path, line_no);
      std::string key = make_key(sentence, token, fields[2]);
      if (!scorer.scores_.emplace(std::move(key), value).second) {
        throw ParseError(path, line_no, "duplicate key");
      }
    }
    return scorer;
  }

  std::vector<double> score(const ScoreQuery& query) const override {
    std::vector<double> out;
    out.reserve(query.candidate_ids.size());
    for (int id : query.candidate_ids) {
      std::string key = make_key(query.sentence_index, query.token_index, vocab_->words[id]);
      auto it = scores_.find(key);
      out.push_back(it == scores_.end() ? kMissingScore : it->second);
    }
    return out;
  }

  std::string name() const override { return "file"; }

 private:
  static std::string make_key(long sentence, long token, std::string_view word) {
    std::string key = std::to_string(sentence);
    key.push_back('\t');
    key += std::to_string(token);
    key.push_back('\t');
    key += word;
    return key;
  }

  const Vocabulary* vocab_ = nullptr;
  std::unordered_map<std::string, double> scores_;
};

}  // namespace red
