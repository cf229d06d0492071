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

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bipol/lexica.hpp"
#include "bipol/textnorm.hpp"

namespace bipol {

/// Per-term occurrence counts for one lexicon, in lexicon order. Zero counts
/// are kept so every term of the lexicon is present.
struct TermFrequencyTable {
  std::vector<std::pair<std::string, std::uint64_t>> entries;

  [[nodiscard]] std::uint64_t count_of(std::string_view term) const {
    for (const auto& [t, n] : entries)
      if (t == term) return n;
    return 0;
  }
  [[nodiscard]] std::uint64_t total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& e : entries) sum += e.second;
    return sum;
  }

  friend bool operator==(const TermFrequencyTable&, const TermFrequencyTable&) = default;
};

namespace detail {

// a-z, 0-9, apostrophe, hyphen, space; everything else maps to 39.
constexpr std::array<std::uint8_t, 256> make_matcher_symbols() {
  std::array<std::uint8_t, 256> table{};
  for (auto& v : table) v = 39;
  for (int c = 'a'; c <= 'z'; ++c) table[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(c - 'a');
  for (int c = '0'; c <= '9'; ++c) table[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>(26 + c - '0');
  table[static_cast<std::size_t>('\'')] = 36;
  table[static_cast<std::size_t>('-')] = 37;
  table[static_cast<std::size_t>(' ')] = 38;
  return table;
}

inline constexpr std::array<std::uint8_t, 256> kMatcherSymbols = make_matcher_symbols();

}  // namespace detail

/// Aho-Corasick automaton over the normalized alphabet. Each pattern p is
/// searched as " p " and counted with non-overlapping, leftmost semantics
/// independently of every other pattern, i.e. exactly what a per-pattern
/// left-to-right substring count would report.
class PatternMatcher {
 public:
  /// Scratch space for one scanning thread.
  struct Scratch {
    std::vector<std::size_t> next_allowed;
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> touched;
    std::uint32_t generation{0};
  };

  struct Hit {
    std::uint32_t pattern;
    std::uint32_t count;
  };

  PatternMatcher() { add_state(); }

  explicit PatternMatcher(std::span<const std::string> patterns) : PatternMatcher() {
    for (const auto& p : patterns) insert(p);
    build();
  }

  [[nodiscard]] std::size_t pattern_count() const noexcept { return lengths_.size(); }
  [[nodiscard]] std::size_t state_count() const noexcept { return terminal_.size(); }

  [[nodiscard]] Scratch make_scratch() const {
    Scratch s;
    s.next_allowed.assign(pattern_count(), 0);
    s.counts.assign(pattern_count(), 0);
    s.stamp.assign(pattern_count(), 0);
    return s;
  }

  /// Sparse counts of every pattern that occurs in `text`, sorted by pattern id.
  void scan(std::string_view text, Scratch& scratch, std::vector<Hit>& hits) const {
    hits.clear();
    if (scratch.counts.size() != pattern_count()) scratch = make_scratch();
    if (++scratch.generation == 0) {
      std::fill(scratch.stamp.begin(), scratch.stamp.end(), 0);
      scratch.generation = 1;
    }
    scratch.touched.clear();
    std::int32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = goto_[static_cast<std::size_t>(state) * kAlphabet + symbol(text[i])];
      std::int32_t out = terminal_[static_cast<std::size_t>(state)] >= 0
                             ? state
                             : dict_link_[static_cast<std::size_t>(state)];
      while (out > 0) {
        const auto p = static_cast<std::uint32_t>(terminal_[static_cast<std::size_t>(out)]);
        if (scratch.stamp[p] != scratch.generation) {
          scratch.stamp[p] = scratch.generation;
          scratch.counts[p] = 0;
          scratch.next_allowed[p] = 0;
          scratch.touched.push_back(p);
        }
        const std::size_t start = i + 1 - lengths_[p];
        if (start >= scratch.next_allowed[p]) {
          ++scratch.counts[p];
          scratch.next_allowed[p] = i + 1;
        }
        out = dict_link_[static_cast<std::size_t>(out)];
      }
    }
    std::sort(scratch.touched.begin(), scratch.touched.end());
    hits.reserve(scratch.touched.size());
    for (auto p : scratch.touched) hits.push_back({p, scratch.counts[p]});
  }

  /// Dense counts, one per pattern.
  [[nodiscard]] std::vector<std::uint64_t> count(std::string_view text) const {
    Scratch scratch = make_scratch();
    std::vector<Hit> hits;
    scan(text, scratch, hits);
    std::vector<std::uint64_t> dense(pattern_count(), 0);
    for (const auto& h : hits) dense[h.pattern] = h.count;
    return dense;
  }

 private:
  // one extra catch-all symbol that no pattern contains
  static constexpr std::size_t kAlphabet = 40;
  static constexpr std::size_t kOther = kAlphabet - 1;

  static std::size_t symbol(char c) noexcept { return detail::kMatcherSymbols[static_cast<unsigned char>(c)]; }

  std::int32_t add_state() {
    goto_.insert(goto_.end(), kAlphabet, -1);
    terminal_.push_back(-1);
    fail_.push_back(0);
    dict_link_.push_back(0);
    return static_cast<std::int32_t>(terminal_.size() - 1);
  }

  void insert(std::string_view pattern) {
    if (pattern.empty()) throw std::invalid_argument("empty pattern");
    const std::string padded = " " + std::string(pattern) + " ";
    std::int32_t state = 0;
    for (char c : padded) {
      const std::size_t sym = symbol(c);
      if (sym == kOther) throw std::invalid_argument("pattern '" + std::string(pattern) + "' is not normalized");
      auto& next = goto_[static_cast<std::size_t>(state) * kAlphabet + sym];
      if (next < 0) {
        const std::int32_t created = add_state();
        // add_state() may have reallocated goto_
        goto_[static_cast<std::size_t>(state) * kAlphabet + sym] = created;
        state = created;
      } else {
        state = next;
      }
    }
    if (terminal_[static_cast<std::size_t>(state)] >= 0)
      throw std::invalid_argument("duplicate pattern '" + std::string(pattern) + "'");
    terminal_[static_cast<std::size_t>(state)] = static_cast<std::int32_t>(lengths_.size());
    lengths_.push_back(padded.size());
  }

  void build() {
    std::vector<std::int32_t> queue;
    queue.reserve(terminal_.size());
    for (std::size_t s = 0; s < kAlphabet; ++s) {
      auto& next = goto_[s];
      if (next < 0) {
        next = 0;
      } else {
        fail_[static_cast<std::size_t>(next)] = 0;
        queue.push_back(next);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto state = static_cast<std::size_t>(queue[head]);
      const auto fail = static_cast<std::size_t>(fail_[state]);
      dict_link_[state] = terminal_[fail] >= 0 ? static_cast<std::int32_t>(fail) : dict_link_[fail];
      for (std::size_t s = 0; s < kAlphabet; ++s) {
        auto& next = goto_[state * kAlphabet + s];
        if (next < 0) {
          next = goto_[fail * kAlphabet + s];
        } else {
          fail_[static_cast<std::size_t>(next)] = goto_[fail * kAlphabet + s];
          queue.push_back(next);
        }
      }
    }
  }

  std::vector<std::int32_t> goto_;
  std::vector<std::int32_t> terminal_;
  std::vector<std::int32_t> fail_;
  std::vector<std::int32_t> dict_link_;
  std::vector<std::size_t> lengths_;
};

/// Counts every lexicon term of an AxisSet in one pass. Results are reported
/// per term slot; slots enumerate (axis, type, term) in load order. A term
/// listed under several types occupies one slot per type and each occurrence
/// counts toward all of them.
class TermMatcher {
 public:
  struct SlotHit {
    std::uint32_t slot;
    std::uint32_t count;
  };
  using Scratch = PatternMatcher::Scratch;

  explicit TermMatcher(const AxisSet& set) {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<std::string> unique;
    std::uint32_t slot = 0;
    for (const auto& axis : set.axes) {
      auto& offsets = type_offsets_.emplace_back();
      for (const auto& lex : axis.types) {
        offsets.push_back(slot);
        for (const auto& term : lex.terms) {
          auto [it, fresh] = ids.emplace(term, static_cast<std::uint32_t>(unique.size()));
          if (fresh) {
            unique.push_back(term);
            pattern_slots_.emplace_back();
          }
          pattern_slots_[it->second].push_back(slot++);
        }
      }
      offsets.push_back(slot);
    }
    slot_count_ = slot;
    patterns_ = PatternMatcher(unique);
  }

  [[nodiscard]] std::size_t slot_count() const noexcept { return slot_count_; }
  [[nodiscard]] std::size_t unique_term_count() const noexcept { return patterns_.pattern_count(); }

  /// First slot of (axis, type); `type == types.size()` gives the end of the axis.
  [[nodiscard]] std::uint32_t slot_begin(std::size_t axis, std::size_t type) const {
    return type_offsets_.at(axis).at(type);
  }

  [[nodiscard]] Scratch make_scratch() const { return patterns_.make_scratch(); }

  /// Sparse slot counts for `text`, sorted by slot.
  void scan(const NormalizedText& text, Scratch& scratch, std::vector<SlotHit>& out) const {
    thread_local std::vector<PatternMatcher::Hit> hits;
    patterns_.scan(text.padded, scratch, hits);
    out.clear();
    for (const auto& h : hits)
      for (auto s : pattern_slots_[h.pattern]) out.push_back({s, h.count});
    std::sort(out.begin(), out.end(), [](const SlotHit& a, const SlotHit& b) { return a.slot < b.slot; });
  }

 private:
  PatternMatcher patterns_;
  std::vector<std::vector<std::uint32_t>> pattern_slots_;
  std::vector<std::vector<std::uint32_t>> type_offsets_;
  std::size_t slot_count_{0};
};

/// Occurrence counts of every term of `lex` in `text`, zeros included.
[[nodiscard]] inline TermFrequencyTable count_terms(const NormalizedText& text, const Lexicon& lex) {
  const PatternMatcher matcher(lex.terms);
  const auto dense = matcher.count(text.padded);
  TermFrequencyTable table;
  table.entries.reserve(lex.terms.size());
  for (std::size_t i = 0; i < lex.terms.size(); ++i) table.entries.emplace_back(lex.terms[i], dense[i]);
  return table;
}

}  // namespace bipol
