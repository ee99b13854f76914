#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace red {

// ASCII-only lowercasing; multibyte sequences pass through untouched.
inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

inline std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

// Strips leading/trailing ASCII punctuation. A token consisting entirely of
// punctuation is kept whole so positional tokens like "." survive and token
// counts stay aligned.
inline std::string strip_surrounding_punct(std::string_view tok) {
  std::size_t begin = 0;
  std::size_t end = tok.size();
  while (begin < end && is_ascii_punct(tok[begin])) ++begin;
  while (end > begin && is_ascii_punct(tok[end - 1])) --end;
  if (begin == end) return std::string(tok);
  return std::string(tok.substr(begin, end - begin));
}

// Ingestion normalization, applied exactly once per input line and
// identically by every command: lowercase, split on whitespace, strip
// surrounding punctuation.
inline std::vector<std::string> normalize_tokens(std::string_view line) {
  std::vector<std::string> tokens = split_whitespace(ascii_lower(line));
  for (std::string& t : tokens) {
    t = strip_surrounding_punct(t);
  }
  return tokens;
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace red
