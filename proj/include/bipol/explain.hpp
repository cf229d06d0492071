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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bipol/lexica.hpp"
#include "bipol/matcher.hpp"
#include "bipol/sentence.hpp"

namespace bipol {

struct TypeTerms {
  std::string type_name;
  TermFrequencyTable table;

  friend bool operator==(const TypeTerms&, const TypeTerms&) = default;
};

struct AxisTerms {
  std::string axis;
  std::vector<TypeTerms> types;

  friend bool operator==(const AxisTerms&, const AxisTerms&) = default;
};

/// Per-axis, per-type term frequencies summed over the scored population:
/// the dictionary of lists that explains a bipol score.
struct ExplainRecord {
  std::vector<AxisTerms> per_axis;

  [[nodiscard]] const AxisTerms* find(std::string_view axis) const {
    for (const auto& a : per_axis)
      if (a.axis == axis) return &a;
    return nullptr;
  }

  friend bool operator==(const ExplainRecord&, const ExplainRecord&) = default;
};

/// Running slot-count totals; partial sums from separate workers can be
/// merged in any order.
class ExplainAccumulator {
 public:
  explicit ExplainAccumulator(std::size_t slot_count) : counts_(slot_count, 0) {}

  void add(std::span<const TermMatcher::SlotHit> hits) {
    for (const auto& h : hits) counts_.at(h.slot) += h.count;
  }
  void add(const SentenceEvaluation& eval) { add(eval.hits); }

  void merge(const ExplainAccumulator& other) {
    if (other.counts_.size() != counts_.size()) throw std::invalid_argument("slot layouts differ");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  }

  [[nodiscard]] ExplainRecord record(const AxisSet& set) const {
    ExplainRecord rec;
    std::size_t slot = 0;
    for (const auto& axis : set.axes) {
      auto& out = rec.per_axis.emplace_back(AxisTerms{axis.name, {}});
      for (const auto& lex : axis.types) {
        auto& tt = out.types.emplace_back(TypeTerms{lex.type_name, {}});
        tt.table.entries.reserve(lex.terms.size());
        for (const auto& term : lex.terms) tt.table.entries.emplace_back(term, counts_.at(slot++));
      }
    }
    if (slot != counts_.size()) throw std::invalid_argument("axis set does not match slot layout");
    return rec;
  }

 private:
  std::vector<std::uint64_t> counts_;
};

/// Element-wise sum of the per-sentence tables, in AxisSet order.
[[nodiscard]] inline ExplainRecord aggregate(std::span<const SentenceEvaluation> evals, const AxisSet& set) {
  ExplainAccumulator acc(set.term_slot_count());
  for (const auto& e : evals) acc.add(e);
  return acc.record(set);
}

struct RankedTerm {
  std::string term;
  std::string type_name;
  std::uint64_t count;

  friend bool operator==(const RankedTerm&, const RankedTerm&) = default;
};

/// The k most frequent nonzero terms of one axis across all of its types;
/// ties go to the lexicographically smaller term, then type.
[[nodiscard]] inline std::vector<RankedTerm> top_k(const ExplainRecord& record, std::string_view axis,
                                                   std::size_t k) {
  if (k < 1) throw std::invalid_argument("top_k: k must be at least 1");
  const AxisTerms* found = record.find(axis);
  if (!found) throw std::invalid_argument("top_k: unknown axis '" + std::string(axis) + "'");
  std::vector<RankedTerm> ranked;
  for (const auto& type : found->types)
    for (const auto& [term, count] : type.table.entries)
      if (count > 0) ranked.push_back({term, type.type_name, count});
  std::sort(ranked.begin(), ranked.end(), [](const RankedTerm& a, const RankedTerm& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.term != b.term) return a.term < b.term;
    return a.type_name < b.type_name;
  });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

struct NeutralizeResult {
  AxisSet axes;
  std::vector<std::string> not_found;  ///< terms present in no lexicon
};

/// Adds each term to every type of every axis in which it already appears in
/// at least one type, so its counts cancel in the polarity numerator.
[[nodiscard]] inline NeutralizeResult neutralize(const AxisSet& set, std::span<const std::string> terms) {
  NeutralizeResult result{set, {}};
  for (const auto& raw : terms) {
    const std::string term = normalize_term(raw);
    bool seen = false;
    for (auto& axis : result.axes.axes) {
      const bool in_axis = std::any_of(axis.types.begin(), axis.types.end(),
                                       [&](const Lexicon& l) { return l.contains(term); });
      if (!in_axis) continue;
      seen = true;
      for (auto& lex : axis.types)
        if (!lex.contains(term)) lex.terms.push_back(term);
    }
    if (!seen) result.not_found.push_back(raw);
  }
  return result;
}

}  // namespace bipol
