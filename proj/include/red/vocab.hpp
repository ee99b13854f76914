#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace red {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Heterogeneous string keys so lookups accept string_view without a copy.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};
using StringMap = std::unordered_map<std::string, int, StringHash, std::equal_to<>>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

struct Vocabulary {
  std::vector<std::string> words;  // file order; index is the word id
  StringMap ids;
  std::vector<int> freq_rank;  // id -> rank; file order doubles as frequency order

  int size() const { return static_cast<int>(words.size()); }

  // -1 when absent
  int id_of(std::string_view word) const {
    auto it = ids.find(word);
    return it == ids.end() ? -1 : it->second;
  }

  bool contains(std::string_view word) const { return ids.find(word) != ids.end(); }
};

struct EmbeddingTable {
  Matrix center;   // n x dim
  Matrix context;  // n x dim, rows valid only when has_context
  bool has_context = false;

  Eigen::Index dim() const { return center.cols(); }
  Eigen::Index rows() const { return center.rows(); }
};

enum class VectorKind { center, context };

namespace detail {

inline double parse_double(std::string_view tok, const std::string& path, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(path, line, "bad numeric value '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(path, line, "non-finite value '" + std::string(tok) + "'");
  }
  return value;
}

inline long parse_long(std::string_view tok, const std::string& path, std::size_t line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(path, line, "bad integer '" + std::string(tok) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

inline std::string_view chomp_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace detail

// Vocabulary plus center/context vector tables, immutable once loaded.
// Word-vector text format: header "<n> <dim>", then one "<word> <v1> ... <vdim>"
// line per word, single-space separated.
class EmbeddingStore {
 public:
  // Loads one table. The first load fixes the vocabulary (file order = id =
  // frequency rank); the second must match it word for word.
  void load(const std::string& path, VectorKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");

    std::string header;
    if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");
    auto head = detail::split_fields(detail::chomp_cr(header), ' ');
    if (head.size() != 2 || head[0].empty() || head[1].empty()) {
      throw ParseError(path, 1, "header must be '<count> <dim>'");
    }
    long n = detail::parse_long(head[0], path, 1);
    long dim = detail::parse_long(head[1], path, 1);
    if (n <= 0 || dim <= 0) throw ParseError(path, 1, "count and dim must be positive");

    const bool first_table = !has_center_ && !tables_.has_context;
    if (!first_table) {
      if (n != vocab_.size()) {
        throw std::runtime_error(path + ": vocabulary mismatch: expected " +
                                 std::to_string(vocab_.size()) + " words, file has " +
                                 std::to_string(n));
      }
      if (dim != tables_.dim()) {
        throw std::runtime_error(path + ": dimension mismatch: expected " +
                                 std::to_string(tables_.dim()) + ", file has " +
                                 std::to_string(dim));
      }
    }
    if ((kind == VectorKind::center && has_center_) ||
        (kind == VectorKind::context && tables_.has_context)) {
      throw std::runtime_error(path + ": table already loaded");
    }

    Vocabulary vocab;
    vocab.words.reserve(n);
    Matrix values(n, dim);
    std::string line;
    for (long row = 0; row < n; ++row) {
      std::size_t line_no = static_cast<std::size_t>(row) + 2;
      if (!std::getline(in, line)) throw ParseError(path, line_no, "unexpected end of file");
      auto fields = detail::split_fields(detail::chomp_cr(line), ' ');
      if (static_cast<long>(fields.size()) != dim + 1) {
        throw ParseError(path, line_no,
                         "expected " + std::to_string(dim + 1) + " fields, got " +
                             std::to_string(fields.size()));
      }
      if (fields[0].empty()) throw ParseError(path, line_no, "empty word");
      std::string word(fields[0]);
      if (!vocab.ids.emplace(word, static_cast<int>(row)).second) {
        throw ParseError(path, line_no, "duplicate word '" + word + "'");
      }
      vocab.words.push_back(std::move(word));
      for (long c = 0; c < dim; ++c) {
        values(row, c) = detail::parse_double(fields[c + 1], path, line_no);
      }
    }
    while (std::getline(in, line)) {
      if (!detail::chomp_cr(line).empty()) {
        throw ParseError(path, static_cast<std::size_t>(n) + 2, "trailing content after last row");
      }
    }

    if (first_table) {
      vocab.freq_rank.resize(vocab.words.size());
      for (int i = 0; i < vocab.size(); ++i) vocab.freq_rank[i] = i;
      vocab_ = std::move(vocab);
      if (kind == VectorKind::center) {
        tables_.center = std::move(values);
        has_center_ = true;
      } else {
        tables_.context = std::move(values);
        tables_.has_context = true;
        tables_.center.resize(n, dim);  // placeholder until center arrives
      }
    } else {
      for (long i = 0; i < n; ++i) {
        if (vocab.words[i] != vocab_.words[i]) {
          throw std::runtime_error(path + ": vocabulary mismatch at word " + std::to_string(i) +
                                   ": '" + vocab.words[i] + "' vs '" + vocab_.words[i] + "'");
        }
      }
      if (kind == VectorKind::center) {
        tables_.center = std::move(values);
        has_center_ = true;
      } else {
        tables_.context = std::move(values);
        tables_.has_context = true;
      }
    }
  }

  // Writes a table back in the text format with 9 significant digits.
  void save(const std::string& path, VectorKind kind) const {
    const Matrix& values = (kind == VectorKind::center) ? tables_.center : tables_.context;
    if (kind == VectorKind::center && !has_center_) {
      throw std::runtime_error("no center table to save");
    }
    if (kind == VectorKind::context && !tables_.has_context) {
      throw std::runtime_error("no context table to save");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << vocab_.size() << ' ' << values.cols() << '\n';
    char buf[40];
    for (int i = 0; i < vocab_.size(); ++i) {
      out << vocab_.words[i];
      for (Eigen::Index c = 0; c < values.cols(); ++c) {
        std::snprintf(buf, sizeof buf, "%.9g", values(i, c));
        out << ' ' << buf;
      }
      out << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
  }

  const Vocabulary& vocab() const { return vocab_; }
  const EmbeddingTable& tables() const { return tables_; }
  bool has_center() const { return has_center_; }
  bool has_context() const { return tables_.has_context; }

  // Center vector for a word id; the zero vector stands in for unknowns.
  Vector center_or_zero(int word_id) const {
    if (word_id < 0) return Vector::Zero(tables_.dim());
    return tables_.center.row(word_id);
  }

 private:
  Vocabulary vocab_;
  EmbeddingTable tables_;
  bool has_center_ = false;
};

// Misspelling variants grouped by correct word; file line order is preserved
// within each group so seeded sampling stays deterministic.
class MisspellingDictionary {
 public:
  static MisspellingDictionary load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    MisspellingDictionary dict;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = detail::chomp_cr(line);
      auto fields = detail::split_fields(view, '\t');
      if (fields.size() != 2) {
        throw ParseError(path, line_no, "expected 'misspelling<TAB>correct'");
      }
      if (fields[0].empty() || fields[1].empty()) {
        throw ParseError(path, line_no, "empty field");
      }
      std::string correct(fields[1]);
      auto [it, inserted] = dict.index_.try_emplace(correct, -1);
      if (inserted) {
        it->second = static_cast<int>(dict.groups_.size());
        dict.groups_.emplace_back();
      }
      dict.groups_[it->second].emplace_back(fields[0]);
    }
    return dict;
  }

  // Empty list (never an error) for words without variants.
  const std::vector<std::string>& variants_of(std::string_view word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return empty_;
    return groups_[it->second];
  }

  std::size_t size() const { return groups_.size(); }

 private:
  StringMap index_;  // correct word -> group index
  std::vector<std::vector<std::string>> groups_;
  inline static const std::vector<std::string> empty_{};
};

}  // namespace red
