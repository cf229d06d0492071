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

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bipol/error.hpp"
#include "bipol/lexica.hpp"
#include "bipol/metric.hpp"
#include "bipol/textnorm.hpp"

namespace bipol {

enum class Label : std::uint8_t { biased, unbiased };

[[nodiscard]] constexpr std::string_view to_string(Label l) noexcept {
  return l == Label::biased ? "biased" : "unbiased";
}

/// Accepts "biased" / "unbiased" in any case, surrounding whitespace ignored.
[[nodiscard]] inline Label parse_label(std::string_view s) {
  const auto t = detail::trim(s);
  std::string lower(t);
  for (auto& c : lower) c = fold_ascii(c);
  if (lower == "biased") return Label::biased;
  if (lower == "unbiased") return Label::unbiased;
  throw DataError("unknown label '" + std::string(s) + "' (expected biased or unbiased)");
}

struct Sample {
  std::string id;
  std::string text;
  std::optional<Label> gold;
  std::optional<Label> pred;

  friend bool operator==(const Sample&, const Sample&) = default;
};

using Corpus = std::vector<Sample>;

// --- baseline classifier ------------------------------------------------------

/// Multinomial naive Bayes over normalized unigram tokens with additive
/// smoothing. Class index 0 is biased, 1 is unbiased. Each class reserves one
/// extra smoothed bucket for tokens outside the vocabulary, so the token
/// probabilities plus the OOV mass sum to one.
struct BaselineModel {
  static constexpr std::string_view kFormat = "bipol-nb v1";

  double alpha{1.0};
  std::array<double, 2> log_prior{};
  std::array<double, 2> log_oov{};
  std::vector<std::string> tokens;                    ///< sorted
  std::array<std::vector<double>, 2> log_likelihood;  ///< parallel to tokens
  std::unordered_map<std::string, std::size_t> index;

  [[nodiscard]] std::optional<std::size_t> find(std::string_view token) const {
    auto it = index.find(std::string(token));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  void rebuild_index() {
    index.clear();
    index.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) index.emplace(tokens[i], i);
  }

  friend bool operator==(const BaselineModel& a, const BaselineModel& b) {
    return a.alpha == b.alpha && a.log_prior == b.log_prior && a.log_oov == b.log_oov &&
           a.tokens == b.tokens && a.log_likelihood == b.log_likelihood;
  }
};

[[nodiscard]] inline std::vector<std::string> tokenize(std::string_view text) {
  return split_words(normalize(text).inner());
}

[[nodiscard]] constexpr std::size_t class_index(Label l) noexcept { return l == Label::biased ? 0 : 1; }

[[nodiscard]] inline BaselineModel train_baseline(const Corpus& corpus, double alpha = 1.0) {
  if (corpus.empty()) throw DataError("cannot train on an empty corpus");
  if (!(alpha > 0.0)) throw std::invalid_argument("smoothing alpha must be positive");

  std::map<std::string, std::array<std::uint64_t, 2>> counts;
  std::array<std::uint64_t, 2> docs{};
  std::array<std::uint64_t, 2> tokens_per_class{};
  for (const auto& s : corpus) {
    if (!s.gold) throw DataError("training sample '" + s.id + "' has no label");
    const std::size_t c = class_index(*s.gold);
    ++docs[c];
    for (auto& tok : tokenize(s.text)) {
      ++counts[std::move(tok)][c];
      ++tokens_per_class[c];
    }
  }
  if (docs[0] == 0 || docs[1] == 0) throw DataError("training corpus must contain both biased and unbiased samples");

  BaselineModel model;
  model.alpha = alpha;
  const double vocab = static_cast<double>(counts.size());
  const double n_docs = static_cast<double>(docs[0] + docs[1]);
  for (std::size_t c = 0; c < 2; ++c) {
    const double denom = std::log(static_cast<double>(tokens_per_class[c]) + alpha * (vocab + 1.0));
    model.log_prior[c] = std::log(static_cast<double>(docs[c]) / n_docs);
    model.log_oov[c] = std::log(alpha) - denom;
    model.log_likelihood[c].reserve(counts.size());
    for (const auto& [tok, n] : counts)
      model.log_likelihood[c].push_back(std::log(static_cast<double>(n[c]) + alpha) - denom);
  }
  model.tokens.reserve(counts.size());
  for (const auto& entry : counts) model.tokens.push_back(entry.first);
  model.rebuild_index();
  return model;
}

struct Prediction {
  Label label;
  std::array<double, 2> log_scores;  ///< biased, unbiased
};

/// Argmax of the class log-posteriors (up to a shared constant). Exact ties
/// go to unbiased.
[[nodiscard]] inline Prediction predict(const BaselineModel& model, std::string_view text) {
  std::array<double, 2> score = model.log_prior;
  for (const auto& tok : tokenize(text)) {
    const auto i = model.find(tok);
    for (std::size_t c = 0; c < 2; ++c) score[c] += i ? model.log_likelihood[c][*i] : model.log_oov[c];
  }
  return {score[0] > score[1] ? Label::biased : Label::unbiased, score};
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DataError("not a number: '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Line-oriented text form: header, alpha, classes, priors, oov, then one
/// `<token> <log_biased> <log_unbiased>` line per vocabulary token.
inline void write_model(const BaselineModel& model, std::ostream& out) {
  using detail::format_double;
  out << BaselineModel::kFormat << '\n';
  out << "alpha " << format_double(model.alpha) << '\n';
  out << "classes biased unbiased\n";
  out << "priors " << format_double(model.log_prior[0]) << ' ' << format_double(model.log_prior[1]) << '\n';
  out << "oov " << format_double(model.log_oov[0]) << ' ' << format_double(model.log_oov[1]) << '\n';
  for (std::size_t i = 0; i < model.tokens.size(); ++i) {
    out << model.tokens[i] << ' ' << format_double(model.log_likelihood[0][i]) << ' '
        << format_double(model.log_likelihood[1][i]) << '\n';
  }
}

[[nodiscard]] inline std::string model_to_string(const BaselineModel& model) {
  std::ostringstream out;
  write_model(model, out);
  return out.str();
}

[[nodiscard]] inline BaselineModel read_model(std::istream& in) {
  BaselineModel model;
  std::string line;
  std::size_t line_no = 0;
  auto fields = [&](std::string_view expect_key, std::size_t n) {
    if (!std::getline(in, line)) throw DataError("model file truncated before '" + std::string(expect_key) + "'");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto parts = split_words(line);
    if (parts.size() != n + 1 || parts[0] != expect_key)
      throw DataError("model line " + std::to_string(line_no) + ": expected '" + std::string(expect_key) + "'");
    return parts;
  };
  if (!std::getline(in, line)) throw DataError("empty model file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != BaselineModel::kFormat) throw DataError("not a bipol-nb v1 model file");
  model.alpha = detail::parse_double(fields("alpha", 1)[1]);
  const auto classes = fields("classes", 2);
  if (classes[1] != "biased" || classes[2] != "unbiased") throw DataError("unexpected class order in model file");
  const auto priors = fields("priors", 2);
  model.log_prior = {detail::parse_double(priors[1]), detail::parse_double(priors[2])};
  const auto oov = fields("oov", 2);
  model.log_oov = {detail::parse_double(oov[1]), detail::parse_double(oov[2])};
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto parts = split_words(line);
    if (parts.size() != 3) throw DataError("model line " + std::to_string(line_no) + ": malformed token entry");
    if (!model.tokens.empty() && !(model.tokens.back() < parts[0]))
      throw DataError("model line " + std::to_string(line_no) + ": tokens not sorted");
    model.tokens.push_back(parts[0]);
    model.log_likelihood[0].push_back(detail::parse_double(parts[1]));
    model.log_likelihood[1].push_back(detail::parse_double(parts[2]));
  }
  model.rebuild_index();
  return model;
}

inline void save_model(const BaselineModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model to " + path.string());
  write_model(model, out);
}

[[nodiscard]] inline BaselineModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model " + path.string());
  return read_model(in);
}

// --- step 1 -------------------------------------------------------------------

enum class PredictionMode { oracle, column, model };

[[nodiscard]] inline PredictionMode parse_prediction_mode(std::string_view s) {
  if (s == "oracle") return PredictionMode::oracle;
  if (s == "column") return PredictionMode::column;
  if (s == "model") return PredictionMode::model;
  throw std::invalid_argument("unknown prediction mode '" + std::string(s) + "'");
}

/// Fills `pred` for every sample: oracle copies gold, column requires pred to
/// be present already, model runs the baseline classifier.
inline void resolve_predictions(Corpus& corpus, PredictionMode mode, const BaselineModel* model = nullptr) {
  switch (mode) {
    case PredictionMode::oracle:
      for (auto& s : corpus) {
        if (!s.gold) throw DataError("oracle mode: sample '" + s.id + "' has no gold label");
        s.pred = s.gold;
      }
      break;
    case PredictionMode::column:
      for (const auto& s : corpus)
        if (!s.pred) throw DataError("column mode: sample '" + s.id + "' has no prediction");
      break;
    case PredictionMode::model:
      if (!model) throw DataError("model mode requires a trained model");
      for (auto& s : corpus) s.pred = predict(*model, s.text).label;
      break;
  }
}

[[nodiscard]] inline ConfusionMatrix confusion(const Corpus& corpus) {
  ConfusionMatrix cm;
  for (const auto& s : corpus) {
    if (!s.gold || !s.pred) throw DataError("sample '" + s.id + "' lacks a gold label or prediction");
    const bool gold = *s.gold == Label::biased;
    const bool pred = *s.pred == Label::biased;
    if (gold && pred) ++cm.tp;
    else if (!gold && pred) ++cm.fp;
    else if (!gold && !pred) ++cm.tn;
    else ++cm.fn;
  }
  return cm;
}

}  // namespace bipol
