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
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bipol {

/// Binary confusion counts with "biased" as the positive class.
struct ConfusionMatrix {
  std::uint64_t tp{0};
  std::uint64_t fp{0};
  std::uint64_t tn{0};
  std::uint64_t fn{0};

  [[nodiscard]] std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  [[nodiscard]] std::uint64_t predicted_positive() const noexcept { return tp + fp; }

  /// Roles of the two classes swapped (unbiased becomes positive).
  [[nodiscard]] ConfusionMatrix swapped() const noexcept { return {tn, fn, tp, fp}; }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Share of samples predicted biased: (tp + fp) / total.
[[nodiscard]] inline double corpus_score(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("corpus_score: empty confusion matrix");
  return static_cast<double>(cm.predicted_positive()) / static_cast<double>(cm.total());
}

/// fp / (fp + tp); empty when nothing was predicted biased.
[[nodiscard]] inline std::optional<double> positive_error_rate(const ConfusionMatrix& cm) {
  if (cm.predicted_positive() == 0) return std::nullopt;
  return static_cast<double>(cm.fp) / static_cast<double>(cm.predicted_positive());
}

/// F1 of the positive class, 2tp / (2tp + fp + fn); 0 for a zero denominator.
[[nodiscard]] inline double f1_positive(const ConfusionMatrix& cm) noexcept {
  const std::uint64_t denom = 2 * cm.tp + cm.fp + cm.fn;
  return denom == 0 ? 0.0 : static_cast<double>(2 * cm.tp) / static_cast<double>(denom);
}

/// Mean of the per-class F1 scores of the biased and unbiased classes.
[[nodiscard]] inline double macro_f1(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("macro_f1: empty confusion matrix");
  return (f1_positive(cm) + f1_positive(cm.swapped())) / 2.0;
}

/// Polarity of one axis: |S1 - S2| / d where S1, S2 are the two largest type
/// sums and d the sum over all types. Empty when d == 0.
[[nodiscard]] inline std::optional<double> axis_score(std::span<const std::uint64_t> type_sums) {
  if (type_sums.size() < 2) throw std::invalid_argument("axis_score: an axis needs at least 2 types");
  std::uint64_t d = 0;
  std::uint64_t first = 0;
  std::uint64_t second = 0;
  for (auto s : type_sums) {
    d += s;
    if (s > first) {
      second = first;
      first = s;
    } else if (s > second) {
      second = s;
    }
  }
  if (d == 0) return std::nullopt;
  return static_cast<double>(first - second) / static_cast<double>(d);
}

[[nodiscard]] inline std::optional<double> axis_score(std::initializer_list<std::uint64_t> type_sums) {
  return axis_score(std::span<const std::uint64_t>(type_sums.begin(), type_sums.size()));
}

/// Mean of the axis scores that are present; empty if none are.
[[nodiscard]] inline std::optional<double> sentence_score(std::span<const std::optional<double>> axis_scores) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : axis_scores) {
    if (s) {
      sum += *s;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

enum class ZeroHitPolicy {
  exclude,  ///< biased samples without any lexicon hit are left out of r
  include,  ///< they count as 0 and are part of r
};

struct SentenceLevel {
  double score{0.0};
  std::size_t scored{0};  ///< r
};

/// Average sentence score over the predicted-biased samples, summed in input order.
[[nodiscard]] inline SentenceLevel corpus_sentence_score(std::span<const std::optional<double>> sentence_scores,
                                                         ZeroHitPolicy policy = ZeroHitPolicy::exclude) {
  double sum = 0.0;
  std::size_t r = 0;
  for (const auto& s : sentence_scores) {
    if (s) {
      sum += *s;
      ++r;
    } else if (policy == ZeroHitPolicy::include) {
      ++r;
    }
  }
  if (r == 0) return {0.0, 0};
  return {sum / static_cast<double>(r), r};
}

/// b = b_c * b_s if b_s > 0, otherwise b_c.
[[nodiscard]] inline double combine(double corpus_level, double sentence_level) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(corpus_level) || !in_unit(sentence_level))
    throw std::invalid_argument("combine: scores must lie in [0, 1]");
  return sentence_level > 0.0 ? corpus_level * sentence_level : corpus_level;
}

/// Half-up rounding for display; stored values stay unrounded.
[[nodiscard]] inline double round_half_up(double value, int places = 3) {
  const double scale = std::pow(10.0, places);
  return std::floor(value * scale + 0.5) / scale;
}

}  // namespace bipol
