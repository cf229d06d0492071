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

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bipol/chart.hpp"
#include "bipol/classify.hpp"
#include "bipol/corpusio.hpp"
#include "bipol/error.hpp"
#include "bipol/evaluate.hpp"
#include "bipol/explain.hpp"
#include "bipol/io.hpp"
#include "bipol/lexica.hpp"
#include "bipol/report.hpp"
#include "bipol/version.hpp"

#ifndef BIPOL_DEFAULT_LEXICA_DIR
#define BIPOL_DEFAULT_LEXICA_DIR "lexica"
#endif

namespace bipol::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalConfig {
  std::string data;
  std::string lexica{BIPOL_DEFAULT_LEXICA_DIR};
  std::string mode;
  std::string model;
  std::string text_col{"text"};
  std::string label_col;
  std::string pred_col;
  std::string id_col;
  bool include_zero_hit{false};
  bool per_sentence{false};
  std::size_t workers{0};
  std::string out;
  std::string chart;
  std::string chart_axis{"gender"};
  std::size_t top_k{10};
};

struct TrainConfig {
  std::string data;
  std::string text_col{"text"};
  std::string label_col{"label"};
  std::string out;
  double alpha{1.0};
};

struct BuildArgs {
  std::string source;
  std::string score_col;
  std::string text_col;
  std::string id_col;
  double threshold{kDefaultThreshold};
  std::string names;
  double val_ratio{kDefaultValRatio};
  std::uint64_t seed{0};
  std::string out;
};

struct ExplainArgs {
  std::string report;
  std::string axis{"gender"};
  std::size_t top_k{10};
  std::string svg;
};

namespace detail {

inline std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

inline std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", round_half_up(v, 3));
  return buf;
}

// BIPOL_WORKERS; unset or empty means 0 (all cores).
inline std::size_t workers_from_env() {
  const char* raw = std::getenv("BIPOL_WORKERS");
  if (!raw || !*raw) return 0;
  const std::string_view v(raw);
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw UsageError("BIPOL_WORKERS must be a non-negative integer, got '" + std::string(v) + "'");
  return n;
}

inline std::string fmt3(const std::optional<double>& v) { return v ? fmt3(*v) : std::string("n/a"); }

}  // namespace detail

inline int run_eval(const EvalConfig& cfg, std::ostream& out, std::ostream& err) {
  const PredictionMode mode = parse_prediction_mode(cfg.mode);
  if (mode == PredictionMode::oracle && cfg.label_col.empty())
    throw UsageError("--mode oracle needs --label-col");
  if (mode == PredictionMode::column && cfg.pred_col.empty())
    throw UsageError("--mode column needs --pred-col");
  if (mode == PredictionMode::model && cfg.model.empty()) throw UsageError("--mode model needs --model");

  const AxisSet axes = load_axis_set(cfg.lexica);
  IngestOptions io;
  io.text_column = cfg.text_col;
  io.label_column = detail::opt(cfg.label_col);
  io.pred_column = detail::opt(cfg.pred_col);
  io.id_column = detail::opt(cfg.id_col);
  IngestResult ingested = ingest(cfg.data, io);
  for (const auto& w : ingested.warnings) err << "warning: " << w << '\n';

  std::optional<BaselineModel> model;
  if (mode == PredictionMode::model) model = load_model(cfg.model);
  resolve_predictions(ingested.corpus, mode, model ? &*model : nullptr);

  EvalOptions opts;
  opts.zero_hit = cfg.include_zero_hit ? ZeroHitPolicy::include : ZeroHitPolicy::exclude;
  opts.workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
  opts.keep_sentences = cfg.per_sentence;
  const BipolReport report = evaluate(ingested.corpus, axes, opts);

  Json echo;
  echo["version"] = std::string(kVersion);
  echo["data"] = cfg.data;
  echo["lexica"] = cfg.lexica;
  echo["lexica_fingerprint"] = detail::hex64(fingerprint(axes));
  echo["mode"] = cfg.mode;
  echo["model"] = cfg.model.empty() ? Json(nullptr) : Json(cfg.model);
  echo["text_col"] = cfg.text_col;
  echo["label_col"] = cfg.label_col.empty() ? Json(nullptr) : Json(cfg.label_col);
  echo["pred_col"] = cfg.pred_col.empty() ? Json(nullptr) : Json(cfg.pred_col);
  echo["id_col"] = cfg.id_col.empty() ? Json(nullptr) : Json(cfg.id_col);
  echo["include_zero_hit"] = cfg.include_zero_hit;
  echo["skipped_empty"] = ingested.skipped_empty;

  // everything is computed before anything is written
  const std::string report_text = report_to_string(report, axes, echo);
  std::string chart_text;
  if (!cfg.chart.empty()) {
    if (!report.explain.find(cfg.chart_axis)) throw UsageError("unknown chart axis '" + cfg.chart_axis + "'");
    chart_text = emit_chart(report.explain, cfg.chart_axis, cfg.top_k);
  }
  write_file_atomic(cfg.out, report_text);
  if (!cfg.chart.empty()) write_file_atomic(cfg.chart, chart_text);

  out << "bipol " << detail::fmt3(report.bipol) << "  (corpus " << detail::fmt3(report.corpus_level)
      << ", sentence " << detail::fmt3(report.sentence_level) << ")\n";
  out << "samples " << report.counts.total << ", predicted biased " << report.counts.predicted_biased
      << ", scored " << report.counts.sentences_scored << ", axes " << report.counts.axes << '\n';
  if (report.confusion) {
    out << "error rate " << detail::fmt3(report.error_rate) << ", macro F1 " << detail::fmt3(report.macro_f1) << '\n';
  }
  out << "report written to " << cfg.out << '\n';
  return kOk;
}

inline int run_train(const TrainConfig& cfg, std::ostream& out, std::ostream& err) {
  IngestOptions io;
  io.text_column = cfg.text_col;
  io.label_column = cfg.label_col;
  IngestResult ingested = ingest(cfg.data, io);
  for (const auto& w : ingested.warnings) err << "warning: " << w << '\n';
  const BaselineModel model = train_baseline(ingested.corpus, cfg.alpha);
  write_file_atomic(cfg.out, model_to_string(model));
  out << "trained on " << ingested.corpus.size() << " samples, vocabulary " << model.tokens.size() << ", model written to "
      << cfg.out << '\n';
  return kOk;
}

inline int run_build(const BuildArgs& args, std::ostream& out) {
  BuildConfig cfg;
  cfg.score_column = args.score_col;
  cfg.text_column = args.text_col;
  cfg.threshold = args.threshold;
  cfg.id_column = detail::opt(args.id_col);
  if (!args.names.empty()) cfg.names_file = args.names;
  cfg.val_ratio = args.val_ratio;
  cfg.seed = args.seed;

  const CsvTable source = read_csv_file(args.source);
  const NameList names = cfg.names_file ? NameList::load(*cfg.names_file) : NameList{};
  const BuildResult result = build_dataset(source, cfg, names);
  write_build(result, cfg, args.out);

  const auto tr = BuildResult::count(result.train);
  const auto va = BuildResult::count(result.validation);
  out << "train " << result.train.size() << " (biased " << tr.biased << ", unbiased " << tr.unbiased << ")\n";
  out << "val " << result.validation.size() << " (biased " << va.biased << ", unbiased " << va.unbiased << ")\n";
  out << "duplicates dropped " << result.duplicates_dropped << ", names replaced " << result.names_replaced << '\n';
  return kOk;
}

inline int run_explain(const ExplainArgs& args, std::ostream& out) {
  Json report;
  try {
    report = Json::parse(bipol::detail::read_file(args.report));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("cannot parse report " + args.report + ": " + e.what());
  }
  if (!report.contains("explain")) throw DataError("report has no explain record");
  const ExplainRecord record = explain_from_json(report["explain"]);
  if (!record.find(args.axis)) throw UsageError("unknown axis '" + args.axis + "'");
  const auto ranked = top_k(record, args.axis, args.top_k);
  if (!args.svg.empty()) write_file_atomic(args.svg, emit_chart(record, args.axis, args.top_k));
  std::size_t rank = 0;
  for (const auto& r : ranked) out << ++rank << '\t' << r.term << '\t' << r.type_name << '\t' << r.count << '\n';
  if (ranked.empty()) out << "no terms matched on axis " << args.axis << '\n';
  return kOk;
}

inline int run_lexica_validate(const std::string& dir, bool verbose, std::ostream& out) {
  const AxisSet axes = load_axis_set(dir);
  const ValidationReport report = validate_axis_set(axes);
  out << "lexica " << dir << " fingerprint " << detail::hex64(fingerprint(axes)) << '\n';
  std::size_t unique = 0;
  for (const auto& f : report.findings) {
    if (f.kind == Finding::Kind::unique_term) {
      ++unique;
      if (!verbose) continue;
    }
    out << f.message << '\n';
  }
  if (!verbose) out << unique << " term(s) unique to one type (use --verbose to list)\n";
  return kOk;
}

inline int print_version(const std::string& lexica_dir, std::ostream& out) {
  out << "bipol " << kVersion << '\n';
  try {
    const AxisSet axes = load_axis_set(lexica_dir);
    out << "lexica " << detail::hex64(fingerprint(axes)) << " (" << lexica_dir << ", " << axes.axis_count()
        << " axes, " << axes.term_slot_count() << " terms)\n";
  } catch (const DataError&) {
    out << "lexica unavailable (" << lexica_dir << ")\n";
  }
  return kOk;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"bipol: multi-axes social bias scoring for text corpora", "bipol"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "Print toolkit and lexica versions");

  EvalConfig eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a corpus and write a report");
  eval_cmd->add_option("--data", eval.data, "Corpus (CSV or JSONL)")->required();
  eval_cmd->add_option("--lexica", eval.lexica, "Lexica directory")->capture_default_str();
  eval_cmd->add_option("--mode", eval.mode, "Prediction source")
      ->required()
      ->check(CLI::IsMember({"oracle", "column", "model"}));
  eval_cmd->add_option("--model", eval.model, "Baseline model file (mode=model)");
  eval_cmd->add_option("--text-col", eval.text_col, "Text column")->capture_default_str();
  eval_cmd->add_option("--label-col", eval.label_col, "Gold label column");
  eval_cmd->add_option("--pred-col", eval.pred_col, "Prediction column");
  eval_cmd->add_option("--id-col", eval.id_col, "Id column");
  eval_cmd->add_flag("--include-zero-hit", eval.include_zero_hit, "Count biased samples without lexicon hits as 0");
  eval_cmd->add_flag("--per-sentence", eval.per_sentence, "Include per-sentence detail in the report");
  auto* workers_opt =
      eval_cmd->add_option("--workers", eval.workers, "Worker threads (default: BIPOL_WORKERS, else all cores)")
          ->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", eval.out, "Report path (JSON)")->required();
  eval_cmd->add_option("--chart", eval.chart, "Also write a top-k SVG chart");
  eval_cmd->add_option("--chart-axis", eval.chart_axis, "Axis for --chart")->capture_default_str();
  eval_cmd->add_option("--top-k", eval.top_k, "Bars in --chart")->check(CLI::PositiveNumber)->capture_default_str();

  TrainConfig train;
  auto* train_cmd = app.add_subcommand("train", "Train the naive Bayes baseline");
  train_cmd->add_option("--data", train.data, "Labeled corpus (CSV or JSONL)")->required();
  train_cmd->add_option("--text-col", train.text_col, "Text column")->capture_default_str();
  train_cmd->add_option("--label-col", train.label_col, "Label column")->capture_default_str();
  train_cmd->add_option("--out", train.out, "Model path")->required();
  train_cmd->add_option("--alpha", train.alpha, "Additive smoothing")->check(CLI::PositiveNumber)->capture_default_str();

  BuildArgs build;
  auto* build_cmd = app.add_subcommand("build", "Build a thresholded, deduplicated, anonymized dataset");
  build_cmd->add_option("--source", build.source, "Source CSV")->required();
  build_cmd->add_option("--score-col", build.score_col, "Score column in [0, 1]")->required();
  build_cmd->add_option("--text-col", build.text_col, "Text column")->required();
  build_cmd->add_option("--id-col", build.id_col, "Source id column (kept as old_id)");
  build_cmd->add_option("--threshold", build.threshold, "Biased iff score >= threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  build_cmd->add_option("--names", build.names, "Names file, one per line");
  build_cmd->add_option("--val-ratio", build.val_ratio, "Validation share")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  build_cmd->add_option("--seed", build.seed, "Split seed")->capture_default_str();
  build_cmd->add_option("--out", build.out, "Output directory")->required();

  ExplainArgs explain;
  auto* explain_cmd = app.add_subcommand("explain", "Top-k terms of a report's explain record");
  explain_cmd->add_option("--report", explain.report, "Report JSON")->required();
  explain_cmd->add_option("--axis", explain.axis, "Axis")->capture_default_str();
  explain_cmd->add_option("--top-k", explain.top_k, "Number of terms")->check(CLI::PositiveNumber)->capture_default_str();
  explain_cmd->add_option("--svg", explain.svg, "Also write an SVG chart");

  std::string lexica_dir;
  bool verbose = false;
  auto* lexica_cmd = app.add_subcommand("lexica", "Lexica utilities");
  lexica_cmd->require_subcommand(1);
  auto* validate_cmd = lexica_cmd->add_subcommand("validate", "Audit a lexica directory");
  validate_cmd->add_option("dir", lexica_dir, "Lexica directory")->required();
  validate_cmd->add_flag("--verbose", verbose, "List every finding");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (version) return print_version(BIPOL_DEFAULT_LEXICA_DIR, out);
    if (*eval_cmd) {
      if (workers_opt->count() == 0) eval.workers = detail::workers_from_env();
      return run_eval(eval, out, err);
    }
    if (*train_cmd) return run_train(train, out, err);
    if (*build_cmd) {
      if (!(build.threshold > 0.0)) throw UsageError("--threshold must be greater than 0");
      if (!(build.val_ratio < 1.0)) throw UsageError("--val-ratio must be below 1");
      return run_build(build, out);
    }
    if (*explain_cmd) return run_explain(explain, out);
    if (*validate_cmd) return run_lexica_validate(lexica_dir, verbose, out);
    err << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace bipol::cli
