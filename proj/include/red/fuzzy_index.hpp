#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "red/levenshtein.hpp"
#include "red/vocab.hpp"

namespace red {

struct Candidate {
  int word_id = -1;
  int distance = 0;
};

// Candidates for one noisy token, sorted ascending by
// (distance, freq_rank, word string). Word strings are unique, so the
// ordering is a strict total order and top-k sets are unique.
struct CandidateSet {
  std::string query;
  std::vector<Candidate> candidates;

  bool empty() const { return candidates.empty(); }
  std::size_t size() const { return candidates.size(); }
};

struct CandidateOrder {
  const Vocabulary* vocab;

  bool operator()(const Candidate& x, const Candidate& y) const {
    if (x.distance != y.distance) return x.distance < y.distance;
    int rx = vocab->freq_rank[x.word_id];
    int ry = vocab->freq_rank[y.word_id];
    if (rx != ry) return rx < ry;
    return vocab->words[x.word_id] < vocab->words[y.word_id];
  }
};

// Exhaustive-scan reference with the identical contract as FuzzyIndex::top_k.
inline CandidateSet brute_force_top_k(const Vocabulary& vocab, std::string_view token, int k) {
  if (k < 1) throw std::invalid_argument("top_k: k must be >= 1");
  std::u32string query = decode_utf8(token);
  std::vector<Candidate> all(vocab.words.size());
  for (int id = 0; id < vocab.size(); ++id) {
    all[id] = Candidate{id, levenshtein(query, decode_utf8(vocab.words[id]))};
  }
  CandidateOrder order{&vocab};
  std::size_t take = std::min<std::size_t>(k, all.size());
  std::partial_sort(all.begin(), all.begin() + take, all.end(), order);
  all.resize(take);
  return CandidateSet{std::string(token), std::move(all)};
}

// BK-tree over the vocabulary. Nodes are inserted in id order, so the tree
// and every query result are deterministic functions of the vocabulary.
class FuzzyIndex {
 public:
  explicit FuzzyIndex(const Vocabulary& vocab) : vocab_(&vocab) {
    if (vocab.words.empty()) throw std::invalid_argument("FuzzyIndex: empty vocabulary");
    decoded_.reserve(vocab.words.size());
    for (const std::string& w : vocab.words) decoded_.push_back(decode_utf8(w));
    nodes_.reserve(vocab.words.size());
    nodes_.push_back(Node{0, {}});
    for (int id = 1; id < vocab.size(); ++id) insert(id);
  }

  // The k nearest vocabulary words under (distance, freq_rank, word).
  // Fewer than k words in the vocabulary means all of them; an
  // in-vocabulary token is always its own distance-0 candidate.
  CandidateSet top_k(std::string_view token, int k) const {
    if (k < 1) throw std::invalid_argument("top_k: k must be >= 1");
    std::u32string query = decode_utf8(token);
    CandidateOrder order{vocab_};
    // max-heap holding the current best k; top is the worst of them
    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> best(order);

    std::vector<int> stack{0};
    while (!stack.empty()) {
      int node_idx = stack.back();
      stack.pop_back();
      const Node& node = nodes_[node_idx];
      int d = levenshtein(query, decoded_[node.word_id]);
      Candidate cand{node.word_id, d};
      if (best.size() < static_cast<std::size_t>(k)) {
        best.push(cand);
      } else if (order(cand, best.top())) {
        best.pop();
        best.push(cand);
      }
      // Triangle inequality: a child at edge e only holds words with
      // distance >= |d - e|. Equality cannot be pruned because such a word
      // may still win its tie on (freq_rank, word).
      bool full = best.size() == static_cast<std::size_t>(k);
      for (const auto& [edge, child] : node.children) {
        if (!full || std::abs(d - edge) <= best.top().distance) {
          stack.push_back(child);
        }
      }
    }

    std::vector<Candidate> out(best.size());
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = best.top();
      best.pop();
    }
    return CandidateSet{std::string(token), std::move(out)};
  }

  const Vocabulary& vocab() const { return *vocab_; }

 private:
  struct Node {
    int word_id;
    std::vector<std::pair<int, int>> children;  // (edge distance, node index), sorted by edge
  };

  void insert(int word_id) {
    int cur = 0;
    while (true) {
      int d = levenshtein(decoded_[word_id], decoded_[nodes_[cur].word_id]);
      auto& children = nodes_[cur].children;
      auto it = std::lower_bound(children.begin(), children.end(), d,
                                 [](const auto& c, int dist) { return c.first < dist; });
      if (it != children.end() && it->first == d) {
        cur = it->second;
        continue;
      }
      int idx = static_cast<int>(nodes_.size());
      children.insert(it, {d, idx});
      nodes_.push_back(Node{word_id, {}});  // after children edit; may reallocate nodes_
      return;
    }
  }

  const Vocabulary* vocab_;
  std::vector<Node> nodes_;
  std::vector<std::u32string> decoded_;
};

}  // namespace red
