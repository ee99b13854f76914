#pragma once

#include <algorithm>
#include <string_view>
#include <vector>

#include "red/unicode.hpp"

namespace red {

// Unit-cost insert/delete/substitute edit distance over unicode scalar
// values. Two-row dynamic program, O(|a|*|b|) time, O(min) memory.
inline int levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na == 0) return static_cast<int>(nb);

  std::vector<int> row(na + 1);
  for (std::size_t i = 0; i <= na; ++i) row[i] = static_cast<int>(i);
  for (std::size_t j = 1; j <= nb; ++j) {
    int diag = row[0];
    row[0] = static_cast<int>(j);
    for (std::size_t i = 1; i <= na; ++i) {
      int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[i];
      row[i] = std::min({row[i] + 1, row[i - 1] + 1, sub});
    }
  }
  return row[na];
}

inline int levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(decode_utf8(a), decode_utf8(b));
}

}  // namespace red
