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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bipol/lexica.hpp"
#include "bipol/matcher.hpp"
#include "bipol/metric.hpp"
#include "bipol/textnorm.hpp"

namespace bipol {

struct AxisEvaluation {
  std::vector<std::uint64_t> type_sums;  ///< in the axis' type order
  std::uint64_t total{0};                ///< d
  std::optional<double> score;           ///< empty when total == 0
};

/// Step-2 result for one sample. `hits` holds the nonzero term-slot counts
/// (see TermMatcher) that the explainability record is built from.
struct SentenceEvaluation {
  std::string sample_id;
  std::vector<AxisEvaluation> per_axis;  ///< in AxisSet order
  std::optional<double> sentence_score;
  std::vector<TermMatcher::SlotHit> hits;
};

/// Scores one text against every axis of `set`. `matcher` must have been
/// built from the same set.
[[nodiscard]] inline SentenceEvaluation evaluate_sentence(std::string sample_id, std::string_view text,
                                                          const AxisSet& set, const TermMatcher& matcher,
                                                          TermMatcher::Scratch& scratch) {
  SentenceEvaluation eval;
  eval.sample_id = std::move(sample_id);
  matcher.scan(normalize(text), scratch, eval.hits);

  eval.per_axis.resize(set.axes.size());
  std::vector<std::optional<double>> scores(set.axes.size());
  std::size_t h = 0;
  for (std::size_t a = 0; a < set.axes.size(); ++a) {
    auto& axis = eval.per_axis[a];
    const std::size_t types = set.axes[a].types.size();
    axis.type_sums.assign(types, 0);
    for (std::size_t t = 0; t < types; ++t) {
      const std::uint32_t end = matcher.slot_begin(a, t + 1);
      while (h < eval.hits.size() && eval.hits[h].slot < end) {
        axis.type_sums[t] += eval.hits[h].count;
        ++h;
      }
      axis.total += axis.type_sums[t];
    }
    axis.score = axis_score(axis.type_sums);
    scores[a] = axis.score;
  }
  eval.sentence_score = sentence_score(scores);
  return eval;
}

[[nodiscard]] inline SentenceEvaluation evaluate_sentence(std::string sample_id, std::string_view text,
                                                          const AxisSet& set, const TermMatcher& matcher) {
  auto scratch = matcher.make_scratch();
  return evaluate_sentence(std::move(sample_id), text, set, matcher, scratch);
}

}  // namespace bipol
