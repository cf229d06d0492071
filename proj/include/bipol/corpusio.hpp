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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bipol/classify.hpp"
#include "bipol/error.hpp"
#include "bipol/io.hpp"
#include "bipol/lexica.hpp"
#include "bipol/textnorm.hpp"

namespace bipol {

// --- CSV (RFC 4180) -------------------------------------------------------------

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line{0};  ///< 1-based line where the record starts
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  }
  [[nodiscard]] std::size_t require_column(std::string_view name) const {
    if (auto c = column(name)) return *c;
    throw DataError("missing column '" + std::string(name) + "'");
  }
};

/// Parses comma-separated records with quoted fields, doubled-quote escapes,
/// embedded newlines, and LF or CRLF line ends. The first record is the header.
[[nodiscard]] inline CsvTable parse_csv(std::string_view data) {
  if (data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);
  std::vector<CsvRow> records;
  CsvRow current;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool row_started = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    // a blank line is not a record
    if (!(current.fields.size() == 1 && current.fields[0].empty())) records.push_back(std::move(current));
    current = CsvRow{};
    row_started = false;
  };

  while (i < data.size()) {
    if (!row_started) {
      current.line = line;
      row_started = true;
    }
    const char c = data[i];
    if (c == '"' && field.empty()) {
      // quoted field; must be the whole field
      const std::size_t open_line = line;
      ++i;
      for (;;) {
        if (i >= data.size()) throw DataError("CSV line " + std::to_string(open_line) + ": unterminated quoted field");
        const char q = data[i];
        if (q == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++i;
      }
      if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r')
        throw DataError("CSV line " + std::to_string(line) + ": unexpected character after closing quote");
      if (i < data.size() && data[i] == ',') {
        end_field();
        ++i;
      }
      continue;
    }
    if (c == '"') throw DataError("CSV line " + std::to_string(line) + ": quote inside unquoted field");
    if (c == ',') {
      end_field();
      ++i;
    } else if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') {
      end_record();
      i += 2;
      ++line;
    } else if (c == '\n') {
      end_record();
      ++i;
      ++line;
    } else {
      field.push_back(c);
      ++i;
    }
  }
  if (row_started) end_record();

  CsvTable table;
  if (records.empty()) return table;
  table.header = std::move(records.front().fields);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != table.header.size()) {
      throw DataError("CSV line " + std::to_string(records[r].line) + ": expected " +
                      std::to_string(table.header.size()) + " fields, found " +
                      std::to_string(records[r].fields.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

[[nodiscard]] inline std::string csv_escape(std::string_view field) {
  const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos ||
                     (!field.empty() && (field.front() == ' ' || field.back() == ' '));
  if (!quote) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

[[nodiscard]] inline CsvTable read_csv_file(const std::filesystem::path& path) {
  return parse_csv(detail::read_file(path));
}

// --- ingestion ------------------------------------------------------------------

struct IngestOptions {
  std::string text_column{"text"};
  std::optional<std::string> label_column;
  std::optional<std::string> pred_column;
  std::optional<std::string> id_column;
};

struct IngestResult {
  Corpus corpus;
  std::size_t skipped_empty{0};
  std::vector<std::string> warnings;
};

namespace detail {

inline bool blank(std::string_view s) { return trim(s).empty(); }

inline std::optional<Label> optional_label(std::string_view cell) {
  if (blank(cell)) return std::nullopt;
  return parse_label(cell);
}

class IngestBuilder {
 public:
  explicit IngestBuilder(const IngestOptions& opts) : opts_(opts) {}

  void add(std::size_t row_number, std::string text, std::optional<std::string_view> id,
           std::optional<std::string_view> label, std::optional<std::string_view> pred, std::size_t line) {
    if (blank(text)) {
      ++result_.skipped_empty;
      return;
    }
    Sample s;
    s.text = std::move(text);
    if (opts_.id_column) {
      if (!id || blank(*id)) throw DataError("line " + std::to_string(line) + ": empty id");
      s.id = std::string(trim(*id));
      if (!ids_.insert(s.id).second) throw DataError("line " + std::to_string(line) + ": duplicate id '" + s.id + "'");
    } else {
      s.id = std::to_string(row_number);
    }
    try {
      if (label) s.gold = optional_label(*label);
      if (pred) s.pred = optional_label(*pred);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line) + ": " + e.what());
    }
    result_.corpus.push_back(std::move(s));
  }

  IngestResult finish() && {
    if (result_.corpus.empty()) result_.warnings.push_back("corpus is empty");
    if (result_.skipped_empty)
      result_.warnings.push_back(std::to_string(result_.skipped_empty) + " row(s) with empty text skipped");
    return std::move(result_);
  }

 private:
  const IngestOptions& opts_;
  IngestResult result_;
  std::unordered_set<std::string> ids_;
};

inline std::optional<std::string> json_cell(const nlohmann::json& obj, const std::string& key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number() || it->is_boolean()) return it->dump();
  throw DataError("line " + std::to_string(line) + ": field '" + key + "' is not a scalar");
}

}  // namespace detail

[[nodiscard]] inline IngestResult ingest_csv(std::string_view data, const IngestOptions& opts) {
  const CsvTable table = parse_csv(data);
  if (table.header.empty()) throw DataError("CSV has no header row");
  const std::size_t text_col = table.require_column(opts.text_column);
  auto optional_col = [&](const std::optional<std::string>& name) -> std::optional<std::size_t> {
    if (!name) return std::nullopt;
    return table.require_column(*name);
  };
  const auto id_col = optional_col(opts.id_column);
  const auto label_col = optional_col(opts.label_column);
  const auto pred_col = optional_col(opts.pred_column);

  detail::IngestBuilder builder(opts);
  std::size_t row_number = 0;
  for (const auto& row : table.rows) {
    ++row_number;
    auto cell = [&](std::optional<std::size_t> c) -> std::optional<std::string_view> {
      if (!c) return std::nullopt;
      return std::string_view(row.fields[*c]);
    };
    builder.add(row_number, row.fields[text_col], cell(id_col), cell(label_col), cell(pred_col), row.line);
  }
  return std::move(builder).finish();
}

[[nodiscard]] inline IngestResult ingest_jsonl(std::string_view data, const IngestOptions& opts) {
  detail::IngestBuilder builder(opts);
  std::size_t row_number = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto nl = data.find('\n', pos);
    if (nl == std::string_view::npos) nl = data.size();
    const auto line = detail::trim(data.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("JSONL line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) throw DataError("JSONL line " + std::to_string(line_no) + ": not an object");
    ++row_number;
    auto text = detail::json_cell(obj, opts.text_column, line_no);
    if (!obj.contains(opts.text_column))
      throw DataError("JSONL line " + std::to_string(line_no) + ": missing column '" + opts.text_column + "'");
    auto opt = [&](const std::optional<std::string>& key) -> std::optional<std::string> {
      if (!key) return std::nullopt;
      return detail::json_cell(obj, *key, line_no).value_or(std::string{});
    };
    const auto id = opt(opts.id_column);
    const auto label = opt(opts.label_column);
    const auto pred = opt(opts.pred_column);
    auto view = [](const std::optional<std::string>& s) -> std::optional<std::string_view> {
      if (!s) return std::nullopt;
      return std::string_view(*s);
    };
    builder.add(row_number, text.value_or(std::string{}), view(id), view(label), view(pred), line_no);
  }
  return std::move(builder).finish();
}

[[nodiscard]] inline bool is_jsonl_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

/// Loads a CSV or JSONL (by extension) corpus.
[[nodiscard]] inline IngestResult ingest(const std::filesystem::path& path, const IngestOptions& opts) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw DataError("input file not found: " + path.string());
  const std::string data = detail::read_file(path);
  return is_jsonl_path(path) ? ingest_jsonl(data, opts) : ingest_csv(data, opts);
}

/// CSV with columns id,text,label,pred; absent labels are empty cells.
/// ingest() with matching column names reads it back unchanged.
inline void export_corpus_csv(const Corpus& corpus, std::ostream& out) {
  const std::vector<std::string> header{"id", "text", "label", "pred"};
  write_csv_row(out, header);
  auto label = [](const std::optional<Label>& l) { return l ? std::string(to_string(*l)) : std::string{}; };
  for (const auto& s : corpus) {
    const std::vector<std::string> row{s.id, s.text, label(s.gold), label(s.pred)};
    write_csv_row(out, row);
  }
}

// --- dataset construction -------------------------------------------------------

inline constexpr double kDefaultThreshold = 0.1;
inline constexpr double kDefaultValRatio = 0.0539;

/// Parses a score cell; must be a number in [0, 1].
[[nodiscard]] inline double parse_score(std::string_view cell) {
  const auto t = detail::trim(cell);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw DataError("score '" + std::string(cell) + "' is not numeric");
  if (!(v >= 0.0 && v <= 1.0)) throw DataError("score '" + std::string(cell) + "' is outside [0, 1]");
  return v;
}

/// biased iff score >= threshold.
[[nodiscard]] inline Label label_by_threshold(double score, double threshold = kDefaultThreshold) {
  if (!(score >= 0.0 && score <= 1.0)) throw DataError("score outside [0, 1]");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must be in (0, 1]");
  return score >= threshold ? Label::biased : Label::unbiased;
}

/// Removes items whose normalized text was already seen; first occurrence
/// wins and order is kept. Returns the number dropped.
template <typename T, typename TextOf>
std::size_t dedup_by_text(std::vector<T>& items, TextOf text_of) {
  std::unordered_set<std::string> seen;
  std::vector<T> kept;
  kept.reserve(items.size());
  for (auto& item : items)
    if (seen.insert(normalize(text_of(item)).padded).second) kept.push_back(std::move(item));
  const std::size_t dropped = items.size() - kept.size();
  items = std::move(kept);
  return dropped;
}

struct DedupResult {
  Corpus corpus;
  std::size_t dropped{0};
};

[[nodiscard]] inline DedupResult dedup(Corpus corpus) {
  const std::size_t dropped = dedup_by_text(corpus, [](const Sample& s) -> const std::string& { return s.text; });
  return {std::move(corpus), dropped};
}

/// Normalized person names, matched as whole-word token sequences.
class NameList {
 public:
  NameList() = default;
  explicit NameList(std::span<const std::string> names) {
    for (const auto& n : names) add(n);
  }

  void add(std::string_view raw) {
    const std::string name = normalize_term(raw);
    if (name.empty()) return;
    max_words_ = std::max(max_words_, split_words(name).size());
    names_.insert(name);
  }

  [[nodiscard]] bool contains(const std::string& normalized) const { return names_.count(normalized) > 0; }
  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t max_words() const noexcept { return max_words_; }

  /// One name per line, '#' comments and blank lines ignored.
  [[nodiscard]] static NameList load(const std::filesystem::path& path) {
    NameList list;
    const std::string data = detail::read_file(path);
    std::size_t pos = 0;
    while (pos < data.size()) {
      auto nl = data.find('\n', pos);
      if (nl == std::string::npos) nl = data.size();
      const auto line = detail::trim(std::string_view(data).substr(pos, nl - pos));
      pos = nl + 1;
      if (!line.empty() && line.front() != '#') list.add(line);
    }
    return list;
  }

 private:
  std::unordered_set<std::string> names_;
  std::size_t max_words_{0};
};

struct AnonymizeResult {
  std::string text;
  std::size_t replacements{0};
};

/// Replaces every whole-word, case-insensitive occurrence of a listed name
/// in the original text with PERSON. Longest match wins at each position.
[[nodiscard]] inline AnonymizeResult anonymize(std::string_view text, const NameList& names) {
  struct Token {
    std::size_t begin;
    std::size_t end;
    std::string folded;
  };
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < text.size();) {
    if (!is_word_char(fold_ascii(text[i]))) {
      ++i;
      continue;
    }
    Token tok{i, i, {}};
    while (i < text.size() && is_word_char(fold_ascii(text[i]))) tok.folded.push_back(fold_ascii(text[i++]));
    tok.end = i;
    tokens.push_back(std::move(tok));
  }

  AnonymizeResult result;
  if (names.size() == 0) {
    result.text = std::string(text);
    return result;
  }
  std::size_t copied = 0;
  for (std::size_t t = 0; t < tokens.size();) {
    std::size_t matched = 0;
    const std::size_t longest = std::min(names.max_words(), tokens.size() - t);
    for (std::size_t len = longest; len >= 1 && matched == 0; --len) {
      std::string candidate = tokens[t].folded;
      for (std::size_t k = 1; k < len; ++k) candidate += ' ' + tokens[t + k].folded;
      if (names.contains(candidate)) matched = len;
    }
    if (matched == 0) {
      ++t;
      continue;
    }
    result.text.append(text.substr(copied, tokens[t].begin - copied));
    result.text.append("PERSON");
    copied = tokens[t + matched - 1].end;
    ++result.replacements;
    t += matched;
  }
  result.text.append(text.substr(copied));
  return result;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

/// Number of validation rows: round(ratio * n), halves rounded up.
[[nodiscard]] inline std::size_t validation_size(std::size_t n, double ratio) {
  if (!(ratio >= 0.0 && ratio < 1.0)) throw std::invalid_argument("val_ratio must be in [0, 1)");
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
}

namespace detail {

// Uniform draw in [0, bound) from raw engine output; fixed across platforms.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

}  // namespace detail

/// Seeded stratified partition. `strata[i]` is the class key of item i.
/// The validation part holds exactly validation_size(n, ratio) items, spread
/// over the strata by largest remainder. Both parts keep input order.
[[nodiscard]] inline SplitIndices split_indices(std::span<const int> strata, double ratio, std::uint64_t seed) {
  const std::size_t n = strata.size();
  const std::size_t target = validation_size(n, ratio);

  std::vector<int> keys(strata.begin(), strata.end());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::vector<std::size_t>> members(keys.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), strata[i]) - keys.begin());
    members[k].push_back(i);
  }

  std::vector<std::size_t> quota(keys.size());
  std::vector<std::pair<std::uint64_t, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const std::uint64_t scaled = static_cast<std::uint64_t>(target) * members[k].size();
    quota[k] = static_cast<std::size_t>(scaled / n);
    assigned += quota[k];
    remainders.emplace_back(scaled % n, k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t j = 0; assigned < target; ++j, ++assigned) ++quota[remainders[j % remainders.size()].second];

  std::mt19937_64 rng(seed);
  std::vector<bool> in_validation(n, false);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    detail::shuffle(members[k], rng);
    for (std::size_t j = 0; j < quota[k]; ++j) in_validation[members[k][j]] = true;
  }
  SplitIndices out;
  out.validation.reserve(target);
  out.train.reserve(n - target);
  for (std::size_t i = 0; i < n; ++i) (in_validation[i] ? out.validation : out.train).push_back(i);
  return out;
}

[[nodiscard]] inline int stratum_of(const std::optional<Label>& label) {
  return label ? static_cast<int>(*label) : -1;
}

/// Splits a corpus by gold label.
[[nodiscard]] inline std::pair<Corpus, Corpus> split(const Corpus& corpus, double ratio, std::uint64_t seed) {
  std::vector<int> strata;
  strata.reserve(corpus.size());
  for (const auto& s : corpus) strata.push_back(stratum_of(s.gold));
  const auto idx = split_indices(strata, ratio, seed);
  std::pair<Corpus, Corpus> parts;
  for (auto i : idx.train) parts.first.push_back(corpus[i]);
  for (auto i : idx.validation) parts.second.push_back(corpus[i]);
  return parts;
}

struct BuildConfig {
  std::string score_column;
  std::string text_column;
  double threshold{kDefaultThreshold};
  std::optional<std::string> id_column;
  std::optional<std::filesystem::path> names_file;
  double val_ratio{kDefaultValRatio};
  std::uint64_t seed{0};

  void check() const {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must be in (0, 1]");
    if (!(val_ratio >= 0.0 && val_ratio < 1.0)) throw std::invalid_argument("val_ratio must be in [0, 1)");
  }
};

/// One output row in the comment_text,label,old_id,id layout.
struct BuildRow {
  std::string comment_text;
  Label label{Label::unbiased};
  std::string old_id;
  std::string id;
};

struct ClassCounts {
  std::size_t biased{0};
  std::size_t unbiased{0};
};

struct BuildResult {
  std::vector<BuildRow> train;
  std::vector<BuildRow> validation;
  std::size_t source_rows{0};
  std::size_t skipped_empty{0};
  std::size_t duplicates_dropped{0};
  std::size_t names_replaced{0};
  std::size_t rows_anonymized{0};

  [[nodiscard]] static ClassCounts count(const std::vector<BuildRow>& rows) {
    ClassCounts c;
    for (const auto& r : rows) (r.label == Label::biased ? c.biased : c.unbiased)++;
    return c;
  }
};

/// Threshold labeling, duplicate removal on normalized text, name
/// anonymization, sequential ids, then a stratified train/validation split.
[[nodiscard]] inline BuildResult build_dataset(const CsvTable& source, const BuildConfig& config,
                                               const NameList& names) {
  config.check();
  const std::size_t text_col = source.require_column(config.text_column);
  const std::size_t score_col = source.require_column(config.score_column);
  const std::optional<std::size_t> id_col =
      config.id_column ? std::optional<std::size_t>(source.require_column(*config.id_column)) : std::nullopt;

  BuildResult result;
  result.source_rows = source.rows.size();
  std::vector<BuildRow> rows;
  rows.reserve(source.rows.size());
  for (const auto& row : source.rows) {
    const std::string& text = row.fields[text_col];
    if (detail::blank(text)) {
      ++result.skipped_empty;
      continue;
    }
    BuildRow out;
    try {
      out.label = label_by_threshold(parse_score(row.fields[score_col]), config.threshold);
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(row.line) + ": " + e.what());
    }
    out.comment_text = text;
    out.old_id = id_col && !detail::blank(row.fields[*id_col]) ? std::string(detail::trim(row.fields[*id_col]))
                                                               : std::string("none");
    rows.push_back(std::move(out));
  }

  result.duplicates_dropped =
      dedup_by_text(rows, [](const BuildRow& r) -> const std::string& { return r.comment_text; });

  std::vector<int> strata;
  strata.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto anon = anonymize(rows[i].comment_text, names);
    if (anon.replacements) {
      result.names_replaced += anon.replacements;
      ++result.rows_anonymized;
      rows[i].comment_text = std::move(anon.text);
    }
    rows[i].id = std::to_string(i + 1);
    strata.push_back(stratum_of(rows[i].label));
  }

  const auto idx = split_indices(strata, config.val_ratio, config.seed);
  for (auto i : idx.train) result.train.push_back(rows[i]);
  for (auto i : idx.validation) result.validation.push_back(rows[i]);
  return result;
}

[[nodiscard]] inline std::string rows_to_csv(const std::vector<BuildRow>& rows) {
  std::ostringstream out;
  const std::vector<std::string> header{"comment_text", "label", "old_id", "id"};
  write_csv_row(out, header);
  for (const auto& r : rows) {
    const std::vector<std::string> fields{r.comment_text, std::string(to_string(r.label)), r.old_id, r.id};
    write_csv_row(out, fields);
  }
  return out.str();
}

[[nodiscard]] inline nlohmann::ordered_json build_manifest(const BuildResult& result, const BuildConfig& config) {
  auto split_json = [](const std::vector<BuildRow>& rows) {
    const auto c = BuildResult::count(rows);
    nlohmann::ordered_json j;
    j["rows"] = rows.size();
    j["biased"] = c.biased;
    j["unbiased"] = c.unbiased;
    return j;
  };
  nlohmann::ordered_json m;
  m["source_rows"] = result.source_rows;
  m["skipped_empty"] = result.skipped_empty;
  m["duplicates_dropped"] = result.duplicates_dropped;
  m["names_replaced"] = result.names_replaced;
  m["rows_anonymized"] = result.rows_anonymized;
  m["train"] = split_json(result.train);
  m["validation"] = split_json(result.validation);
  nlohmann::ordered_json cfg;
  cfg["score_column"] = config.score_column;
  cfg["text_column"] = config.text_column;
  cfg["id_column"] = config.id_column ? nlohmann::ordered_json(*config.id_column) : nlohmann::ordered_json();
  cfg["threshold"] = config.threshold;
  cfg["val_ratio"] = config.val_ratio;
  cfg["seed"] = config.seed;
  cfg["names_file"] = config.names_file ? nlohmann::ordered_json(config.names_file->string()) : nlohmann::ordered_json();
  m["config"] = cfg;
  return m;
}

/// Writes train.csv, val.csv and manifest.json into `dir`.
inline void write_build(const BuildResult& result, const BuildConfig& config, const std::filesystem::path& dir) {
  write_file_atomic(dir / "train.csv", rows_to_csv(result.train));
  write_file_atomic(dir / "val.csv", rows_to_csv(result.validation));
  write_file_atomic(dir / "manifest.json", build_manifest(result, config).dump(2) + "\n");
}

}  // namespace bipol
