// Copyright 2026 The bipol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bipol {

/// Text reduced to the matcher alphabet: lowercase ASCII letters, digits,
/// apostrophe, hyphen and single spaces, with one space of padding at each
/// end so that " term " patterns only hit whole words.
struct NormalizedText {
  std::string padded{" "};
  std::size_t original_len{0};

  /// The normalized text without its padding.
  [[nodiscard]] std::string_view inner() const {
    if (padded.size() <= 2) return {};
    return std::string_view(padded).substr(1, padded.size() - 2);
  }
};

[[nodiscard]] constexpr bool is_word_char(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '-';
}

[[nodiscard]] constexpr char fold_ascii(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

[[nodiscard]] inline NormalizedText normalize(std::string_view text) {
  NormalizedText out;
  out.original_len = text.size();
  out.padded.clear();
  out.padded.reserve(text.size() + 2);
  out.padded.push_back(' ');
  for (char raw : text) {
    const char c = fold_ascii(raw);
    if (is_word_char(c)) {
      out.padded.push_back(c);
    } else if (out.padded.back() != ' ') {
      out.padded.push_back(' ');
    }
  }
  if (out.padded.back() != ' ') out.padded.push_back(' ');
  return out;
}

/// Normalized form of a lexicon term or name: normalize() without padding.
[[nodiscard]] inline std::string normalize_term(std::string_view term) {
  return std::string(normalize(term).inner());
}

[[nodiscard]] inline std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    while (pos < normalized.size() && normalized[pos] == ' ') ++pos;
    const std::size_t start = pos;
    while (pos < normalized.size() && normalized[pos] != ' ') ++pos;
    if (pos > start) words.emplace_back(normalized.substr(start, pos - start));
  }
  return words;
}

}  // namespace bipol
