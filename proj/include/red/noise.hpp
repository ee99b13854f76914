#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "red/rng.hpp"
#include "red/unicode.hpp"
#include "red/vocab.hpp"

namespace red {

enum class NoiseMode { synthetic, natural };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::synthetic;
  double prob = 0.0;  // per-word corruption probability, in [0, 1]
  std::uint64_t seed = 0;
};

enum class NoiseOp { none, delete_char, insert_char, swap_chars, replace_char, substitute_dict };

inline const char* to_string(NoiseOp op) {
  switch (op) {
    case NoiseOp::none: return "none";
    case NoiseOp::delete_char: return "delete";
    case NoiseOp::insert_char: return "insert";
    case NoiseOp::swap_chars: return "swap";
    case NoiseOp::replace_char: return "replace";
    case NoiseOp::substitute_dict: return "substitute_dict";
  }
  return "none";
}

struct NoiseRecord {
  long sentence_index = 0;
  int word_index = 0;
  NoiseOp op = NoiseOp::none;
  std::string original;
  std::string corrupted;
};

using NoiseTrace = std::vector<NoiseRecord>;  // one record per input word

namespace detail {

inline void check_spec(const NoiseSpec& spec) {
  if (spec.prob < 0.0 || spec.prob > 1.0) {
    throw std::invalid_argument("noise: prob must be in [0, 1]");
  }
}

// Uniform lowercase letter, excluding `not_this` when it is a-z.
inline char32_t random_letter(SplitMix64& rng, char32_t not_this) {
  if (not_this >= U'a' && not_this <= U'z') {
    char32_t c = U'a' + static_cast<char32_t>(rng.next_below(25));
    if (c >= not_this) ++c;
    return c;
  }
  return U'a' + static_cast<char32_t>(rng.next_below(26));
}

}  // namespace detail

// Applies one character operation to a word. Draw order per word, all from
// the word's own stream: selection unit, op choice, then op positions and
// characters. Single-character words fall back from delete/swap to replace.
// Operates on unicode scalar values.
inline std::pair<std::string, NoiseOp> corrupt_word(const std::string& word, SplitMix64& rng) {
  std::u32string cps = decode_utf8(word);
  const std::size_t len = cps.size();
  if (len == 0) return {word, NoiseOp::none};

  std::uint64_t roll = rng.next_below(4);  // 0 delete, 1 insert, 2 swap, 3 replace
  NoiseOp op;
  switch (roll) {
    case 0: op = NoiseOp::delete_char; break;
    case 1: op = NoiseOp::insert_char; break;
    case 2: op = NoiseOp::swap_chars; break;
    default: op = NoiseOp::replace_char; break;
  }
  if (len == 1 && (op == NoiseOp::delete_char || op == NoiseOp::swap_chars)) {
    op = NoiseOp::replace_char;
  }

  switch (op) {
    case NoiseOp::delete_char: {
      std::size_t pos = rng.next_below(len);
      cps.erase(cps.begin() + static_cast<std::ptrdiff_t>(pos));
      break;
    }
    case NoiseOp::insert_char: {
      std::size_t gap = rng.next_below(len + 1);
      char32_t c = U'a' + static_cast<char32_t>(rng.next_below(26));
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(gap), c);
      break;
    }
    case NoiseOp::swap_chars: {
      // two distinct positions; equal characters may still yield the input
      std::size_t p = rng.next_below(len);
      std::size_t q = rng.next_below(len - 1);
      if (q >= p) ++q;
      std::swap(cps[p], cps[q]);
      break;
    }
    case NoiseOp::replace_char: {
      std::size_t pos = rng.next_below(len);
      cps[pos] = detail::random_letter(rng, cps[pos]);
      break;
    }
    default: break;
  }
  return {encode_utf8(cps), op};
}

// Character-level corruption. Each word owns the stream derived from
// (seed, sentence_index, word_index): one selection draw, then op draws if
// selected. Word count is always preserved.
inline std::pair<std::vector<std::string>, NoiseTrace> inject_synthetic(
    std::span<const std::string> words, const NoiseSpec& spec, long sentence_index) {
  detail::check_spec(spec);
  std::vector<std::string> out;
  out.reserve(words.size());
  NoiseTrace trace;
  trace.reserve(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    SplitMix64 rng(derive_stream(spec.seed, {static_cast<std::uint64_t>(sentence_index),
                                             static_cast<std::uint64_t>(w)}));
    NoiseRecord rec{sentence_index, static_cast<int>(w), NoiseOp::none, words[w], words[w]};
    if (rng.next_unit() < spec.prob) {
      auto [corrupted, op] = corrupt_word(words[w], rng);
      rec.op = op;
      rec.corrupted = std::move(corrupted);
    }
    out.push_back(rec.corrupted);
    trace.push_back(std::move(rec));
  }
  return {std::move(out), std::move(trace)};
}

// Misspelling substitution. Selected words with dictionary variants are
// replaced by a uniformly chosen variant; selected words without variants
// stay unchanged (op "none").
inline std::pair<std::vector<std::string>, NoiseTrace> inject_natural(
    std::span<const std::string> words, const NoiseSpec& spec, const MisspellingDictionary& dict,
    long sentence_index) {
  detail::check_spec(spec);
  std::vector<std::string> out;
  out.reserve(words.size());
  NoiseTrace trace;
  trace.reserve(words.size());
  for (std::size_t w = 0; w < words.size(); ++w) {
    SplitMix64 rng(derive_stream(spec.seed, {static_cast<std::uint64_t>(sentence_index),
                                             static_cast<std::uint64_t>(w)}));
    NoiseRecord rec{sentence_index, static_cast<int>(w), NoiseOp::none, words[w], words[w]};
    if (rng.next_unit() < spec.prob) {
      const std::vector<std::string>& variants = dict.variants_of(words[w]);
      if (!variants.empty()) {
        rec.op = NoiseOp::substitute_dict;
        rec.corrupted = variants[rng.next_below(variants.size())];
      }
    }
    out.push_back(rec.corrupted);
    trace.push_back(std::move(rec));
  }
  return {std::move(out), std::move(trace)};
}

inline std::pair<std::vector<std::string>, NoiseTrace> inject_noise(
    std::span<const std::string> words, const NoiseSpec& spec, const MisspellingDictionary* dict,
    long sentence_index) {
  if (spec.mode == NoiseMode::synthetic) return inject_synthetic(words, spec, sentence_index);
  if (dict == nullptr) throw std::invalid_argument("natural noise requires a misspelling dictionary");
  return inject_natural(words, spec, *dict, sentence_index);
}

// Sidecar format: sentence_index<TAB>word_index<TAB>op<TAB>original<TAB>corrupted
inline void write_trace_tsv(std::ostream& out, const NoiseTrace& trace) {
  for (const NoiseRecord& rec : trace) {
    out << rec.sentence_index << '\t' << rec.word_index << '\t' << to_string(rec.op) << '\t'
        << rec.original << '\t' << rec.corrupted << '\n';
  }
}

}  // namespace red
