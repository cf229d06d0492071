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

#include <optional>
#include <string>

#include <json.hpp>

#include "bipol/error.hpp"
#include "bipol/evaluate.hpp"
#include "bipol/explain.hpp"
#include "bipol/lexica.hpp"

namespace bipol {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json nullable(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace detail

/// {"gender": [{"type": "female", "terms": {"she": 3, ...}}, ...], ...}
[[nodiscard]] inline Json explain_to_json(const ExplainRecord& record) {
  Json out = Json::object();
  for (const auto& axis : record.per_axis) {
    Json types = Json::array();
    for (const auto& type : axis.types) {
      Json terms = Json::object();
      for (const auto& [term, count] : type.table.entries) terms[term] = count;
      types.push_back(Json{{"type", type.type_name}, {"terms", std::move(terms)}});
    }
    out[axis.axis] = std::move(types);
  }
  return out;
}

[[nodiscard]] inline ExplainRecord explain_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("explain record must be a JSON object");
  ExplainRecord record;
  try {
    for (const auto& [axis, types] : j.items()) {
      AxisTerms at{axis, {}};
      for (const auto& type : types) {
        TypeTerms tt{type.at("type").get<std::string>(), {}};
        for (const auto& [term, count] : type.at("terms").items())
          tt.table.entries.emplace_back(term, count.get<std::uint64_t>());
        at.types.push_back(std::move(tt));
      }
      record.per_axis.push_back(std::move(at));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed explain record: ") + e.what());
  }
  return record;
}

[[nodiscard]] inline Json sentence_to_json(const SentenceEvaluation& eval, const AxisSet& axes) {
  Json per_axis = Json::object();
  for (std::size_t a = 0; a < eval.per_axis.size(); ++a) {
    const auto& ae = eval.per_axis[a];
    Json sums = Json::object();
    for (std::size_t t = 0; t < ae.type_sums.size(); ++t) sums[axes.axes[a].types[t].type_name] = ae.type_sums[t];
    per_axis[axes.axes[a].name] = Json{{"type_sums", std::move(sums)}, {"total", ae.total}, {"score", detail::nullable(ae.score)}};
  }
  return Json{{"id", eval.sample_id}, {"sentence_score", detail::nullable(eval.sentence_score)}, {"axes", std::move(per_axis)}};
}

/// Stable key order: bipol, corpus_level, sentence_level, error_rate,
/// macro_f1, confusion, counts, explain, config_echo[, per_sentence].
[[nodiscard]] inline Json report_to_json(const BipolReport& report, const AxisSet& axes, const Json& config_echo) {
  Json j;
  j["bipol"] = report.bipol;
  j["corpus_level"] = report.corpus_level;
  j["sentence_level"] = report.sentence_level;
  j["error_rate"] = detail::nullable(report.error_rate);
  j["macro_f1"] = detail::nullable(report.macro_f1);
  if (report.confusion) {
    const auto& cm = *report.confusion;
    j["confusion"] = Json{{"tp", cm.tp}, {"fp", cm.fp}, {"tn", cm.tn}, {"fn", cm.fn}};
  } else {
    j["confusion"] = nullptr;
  }
  j["counts"] = Json{{"total", report.counts.total},
                     {"predicted_biased", report.counts.predicted_biased},
                     {"sentences_scored", report.counts.sentences_scored},
                     {"axes", report.counts.axes}};
  j["explain"] = explain_to_json(report.explain);
  j["config_echo"] = config_echo;
  if (!report.sentences.empty()) {
    Json rows = Json::array();
    for (const auto& s : report.sentences) rows.push_back(sentence_to_json(s, axes));
    j["per_sentence"] = std::move(rows);
  }
  return j;
}

[[nodiscard]] inline std::string report_to_string(const BipolReport& report, const AxisSet& axes, const Json& config_echo) {
  return report_to_json(report, axes, config_echo).dump(2) + "\n";
}

}  // namespace bipol
