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
#include <optional>
#include <thread>
#include <vector>

#include "bipol/classify.hpp"
#include "bipol/error.hpp"
#include "bipol/explain.hpp"
#include "bipol/lexica.hpp"
#include "bipol/matcher.hpp"
#include "bipol/metric.hpp"
#include "bipol/sentence.hpp"

namespace bipol {

struct EvalOptions {
  ZeroHitPolicy zero_hit{ZeroHitPolicy::exclude};
  std::size_t workers{1};
  bool keep_sentences{false};
};

struct ReportCounts {
  std::size_t total{0};
  std::size_t predicted_biased{0};
  std::size_t sentences_scored{0};  ///< r
  std::size_t axes{0};              ///< q
};

struct BipolReport {
  double corpus_level{0.0};
  double sentence_level{0.0};
  double bipol{0.0};
  std::optional<double> error_rate;
  std::optional<double> macro_f1;
  std::optional<ConfusionMatrix> confusion;
  ReportCounts counts;
  ExplainRecord explain;
  std::vector<SentenceEvaluation> sentences;  ///< only with EvalOptions::keep_sentences
};

/// Runs both steps on a corpus whose predictions are already resolved.
/// Step 1 uses the predictions (and gold labels, when every sample has one);
/// step 2 scores the predicted-biased samples against `axes`. Results do not
/// depend on the worker count: per-sample work is independent, term counts
/// are integers, and floating-point reductions run in sample order.
[[nodiscard]] inline BipolReport evaluate(const Corpus& corpus, const AxisSet& axes, const EvalOptions& opts = {}) {
  if (corpus.empty()) throw DataError("cannot evaluate an empty corpus");
  check_axis_set(axes);

  BipolReport report;
  report.counts.total = corpus.size();
  report.counts.axes = axes.axis_count();

  const bool labeled = std::all_of(corpus.begin(), corpus.end(), [](const Sample& s) { return s.gold.has_value(); });
  std::vector<std::size_t> biased;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!corpus[i].pred) throw DataError("sample '" + corpus[i].id + "' has no prediction");
    if (*corpus[i].pred == Label::biased) biased.push_back(i);
  }
  report.counts.predicted_biased = biased.size();

  ConfusionMatrix cm;
  if (labeled) {
    cm = confusion(corpus);
    report.confusion = cm;
    report.error_rate = positive_error_rate(cm);
    report.macro_f1 = macro_f1(cm);
  } else {
    // unlabeled: only the predicted-positive split is meaningful
    cm.tp = biased.size();
    cm.tn = corpus.size() - biased.size();
  }
  report.corpus_level = corpus_score(cm);

  const TermMatcher matcher(axes);
  std::vector<std::optional<double>> scores(biased.size());
  if (opts.keep_sentences) report.sentences.resize(biased.size());

  const std::size_t workers = std::clamp<std::size_t>(opts.workers, 1, std::max<std::size_t>(biased.size(), 1));
  std::vector<ExplainAccumulator> partials(workers, ExplainAccumulator(matcher.slot_count()));
  auto run_range = [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto scratch = matcher.make_scratch();
    for (std::size_t j = begin; j < end; ++j) {
      const Sample& s = corpus[biased[j]];
      SentenceEvaluation eval = evaluate_sentence(s.id, s.text, axes, matcher, scratch);
      scores[j] = eval.sentence_score;
      partials[w].add(eval);
      if (opts.keep_sentences) report.sentences[j] = std::move(eval);
    }
  };
  if (workers == 1) {
    run_range(0, 0, biased.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (biased.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(biased.size(), w * chunk);
      const std::size_t end = std::min(biased.size(), begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  ExplainAccumulator total(matcher.slot_count());
  for (const auto& p : partials) total.merge(p);
  report.explain = total.record(axes);

  const SentenceLevel level = corpus_sentence_score(scores, opts.zero_hit);
  report.sentence_level = level.score;
  report.counts.sentences_scored = level.scored;
  report.bipol = combine(report.corpus_level, report.sentence_level);
  return report;
}

}  // namespace bipol
