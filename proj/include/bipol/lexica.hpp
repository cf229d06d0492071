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
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "bipol/error.hpp"
#include "bipol/textnorm.hpp"

namespace bipol {

inline constexpr std::size_t kMaxTermWords = 8;

/// Sensitive terms for one type of one bias axis, e.g. gender/female.
/// Terms are normalized, unique, and kept in file order.
struct Lexicon {
  std::string axis;
  std::string type_name;
  std::vector<std::string> terms;
  // Load diagnostics; not part of equality.
  std::size_t duplicates_dropped{0};
  std::size_t empty_dropped{0};

  [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }
  [[nodiscard]] bool contains(std::string_view term) const {
    return std::find(terms.begin(), terms.end(), term) != terms.end();
  }

  /// Appends a raw term. Returns false if it normalized to nothing or was
  /// already present.
  bool add(std::string_view raw) {
    std::string term = normalize_term(raw);
    if (term.empty()) {
      ++empty_dropped;
      return false;
    }
    if (split_words(term).size() > kMaxTermWords) {
      throw DataError("term '" + term + "' in " + axis + "_" + type_name + " has more than " +
                      std::to_string(kMaxTermWords) + " words");
    }
    if (contains(term)) {
      ++duplicates_dropped;
      return false;
    }
    terms.push_back(std::move(term));
    return true;
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.axis == b.axis && a.type_name == b.type_name && a.terms == b.terms;
  }
};

struct Axis {
  std::string name;
  std::vector<Lexicon> types;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// All lexica of a run, grouped by axis in load order. Immutable once built.
struct AxisSet {
  std::vector<Axis> axes;
  std::string source_dir;

  [[nodiscard]] const Axis* find(std::string_view axis) const {
    for (const auto& a : axes)
      if (a.name == axis) return &a;
    return nullptr;
  }
  [[nodiscard]] std::size_t axis_count() const noexcept { return axes.size(); }
  [[nodiscard]] std::size_t term_slot_count() const noexcept {
    std::size_t n = 0;
    for (const auto& a : axes)
      for (const auto& t : a.types) n += t.size();
    return n;
  }

  friend bool operator==(const AxisSet& a, const AxisSet& b) { return a.axes == b.axes; }
};

/// Throws DataError unless every axis has at least two non-empty types.
inline void check_axis_set(const AxisSet& set) {
  if (set.axes.empty()) throw DataError("axis set is empty");
  for (const auto& axis : set.axes) {
    if (axis.types.size() < 2) {
      throw DataError("axis '" + axis.name + "' has " + std::to_string(axis.types.size()) +
                      " type(s); at least 2 are required");
    }
    for (const auto& lex : axis.types) {
      if (lex.terms.empty()) throw DataError("lexicon " + axis.name + "_" + lex.type_name + " is empty");
    }
  }
}

/// Groups lexica by axis, keeping first-seen axis order, and validates.
[[nodiscard]] inline AxisSet make_axis_set(std::vector<Lexicon> lexica, std::string source_dir = {}) {
  AxisSet set;
  set.source_dir = std::move(source_dir);
  for (auto& lex : lexica) {
    auto it = std::find_if(set.axes.begin(), set.axes.end(),
                           [&](const Axis& a) { return a.name == lex.axis; });
    if (it == set.axes.end()) {
      set.axes.push_back(Axis{lex.axis, {}});
      it = std::prev(set.axes.end());
    }
    for (const auto& existing : it->types) {
      if (existing.type_name == lex.type_name)
        throw DataError("duplicate lexicon " + lex.axis + "_" + lex.type_name);
    }
    it->types.push_back(std::move(lex));
  }
  check_axis_set(set);
  return set;
}

namespace detail {

struct LexiconFileName {
  std::string axis;
  std::string type_name;
};

// `<axis>_<type>.txt`, split on the first underscore.
inline bool parse_lexicon_filename(const std::string& name, LexiconFileName& out) {
  constexpr std::string_view ext = ".txt";
  if (name.size() <= ext.size() || name.compare(name.size() - ext.size(), ext.size(), ext) != 0)
    return false;
  const std::string stem = name.substr(0, name.size() - ext.size());
  const auto us = stem.find('_');
  if (us == std::string::npos || us == 0 || us + 1 >= stem.size()) return false;
  out.axis = stem.substr(0, us);
  out.type_name = stem.substr(us + 1);
  return true;
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return s.substr(first, last - first + 1);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

/// Parses lexicon file contents: one term per line, '#' comments and blank
/// lines skipped, CRLF tolerated.
[[nodiscard]] inline Lexicon parse_lexicon(std::string axis, std::string type_name,
                                           std::string_view contents) {
  Lexicon lex{std::move(axis), std::move(type_name), {}};
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    auto nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    const auto line = detail::trim(contents.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    lex.add(line);
  }
  return lex;
}

[[nodiscard]] inline AxisSet load_axis_set(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw DataError("lexica directory not found: " + dir.string());

  std::vector<std::pair<std::string, detail::LexiconFileName>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    detail::LexiconFileName parsed;
    const std::string name = entry.path().filename().string();
    if (detail::parse_lexicon_filename(name, parsed)) files.emplace_back(name, std::move(parsed));
  }
  if (files.empty()) throw DataError("no <axis>_<type>.txt lexicon files in " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Lexicon> lexica;
  for (auto& [name, parsed] : files) {
    Lexicon lex = parse_lexicon(std::move(parsed.axis), std::move(parsed.type_name),
                                detail::read_file(dir / name));
    if (lex.terms.empty()) throw DataError("lexicon file " + name + " contains no terms");
    lexica.push_back(std::move(lex));
  }
  return make_axis_set(std::move(lexica), dir.string());
}

/// Writes one `<axis>_<type>.txt` per lexicon. Reloading yields an equal set.
inline void write_axis_set(const AxisSet& set, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& axis : set.axes) {
    if (axis.name.empty() || axis.name.find('_') != std::string::npos)
      throw std::invalid_argument("axis name '" + axis.name + "' cannot be written as a filename");
    for (const auto& lex : axis.types) {
      if (lex.type_name.empty()) throw std::invalid_argument("empty type name in axis " + axis.name);
      std::ofstream out(dir / (axis.name + "_" + lex.type_name + ".txt"), std::ios::binary);
      if (!out) throw DataError("cannot write lexicon into " + dir.string());
      for (const auto& term : lex.terms) out << term << '\n';
    }
  }
}

/// Stable 64-bit FNV-1a digest of the set's axes, types and terms.
[[nodiscard]] inline std::uint64_t fingerprint(const AxisSet& set) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& axis : set.axes) {
    mix(axis.name);
    for (const auto& lex : axis.types) {
      mix(lex.type_name);
      for (const auto& t : lex.terms) mix(t);
    }
  }
  return h;
}

// --- validation -------------------------------------------------------------

struct Finding {
  enum class Kind { type_count, shared_term, unique_term, prefix_term, load_warning };
  Kind kind;
  std::string axis;
  std::string term;
  std::vector<std::string> types;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  [[nodiscard]] std::vector<const Finding*> of_kind(Finding::Kind kind) const {
    std::vector<const Finding*> out;
    for (const auto& f : findings)
      if (f.kind == kind) out.push_back(&f);
    return out;
  }
  [[nodiscard]] bool has(Finding::Kind kind, std::string_view term) const {
    return std::any_of(findings.begin(), findings.end(),
                       [&](const Finding& f) { return f.kind == kind && f.term == term; });
  }
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

/// Report-only audit of an axis set: type sizes, terms shared between types
/// of an axis (these cancel in the polarity numerator), terms unique to one
/// type, and terms that are whole-word prefixes of a longer term in the same
/// axis (both will match on the same span).
[[nodiscard]] inline ValidationReport validate_axis_set(const AxisSet& set) {
  ValidationReport report;
  for (const auto& axis : set.axes) {
    std::vector<std::string> sizes;
    for (const auto& lex : axis.types) {
      sizes.push_back(lex.type_name + " " + std::to_string(lex.size()));
      if (lex.duplicates_dropped || lex.empty_dropped) {
        report.findings.push_back(
            {Finding::Kind::load_warning, axis.name, {}, {lex.type_name},
             axis.name + "_" + lex.type_name + ": " + std::to_string(lex.duplicates_dropped) +
                 " duplicate(s), " + std::to_string(lex.empty_dropped) + " empty term(s) dropped"});
      }
    }
    report.findings.push_back({Finding::Kind::type_count, axis.name, {}, {},
                               axis.name + ": " + std::to_string(axis.types.size()) + " types (" +
                                   detail::join(sizes, ", ") + ")"});

    // term -> owning types, in first-seen order
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::string>> owners;
    for (const auto& lex : axis.types) {
      for (const auto& term : lex.terms) {
        auto& list = owners[term];
        if (list.empty()) order.push_back(term);
        list.push_back(lex.type_name);
      }
    }
    for (const auto& term : order) {
      const auto& types = owners[term];
      if (types.size() >= 2) {
        report.findings.push_back({Finding::Kind::shared_term, axis.name, term, types,
                                   term + " shared by " + detail::join(types, ", ")});
      } else {
        report.findings.push_back({Finding::Kind::unique_term, axis.name, term, types,
                                   term + " unique to " + types.front()});
      }
    }
    for (const auto& shorter : order) {
      const std::string needle = shorter + " ";
      for (const auto& longer : order) {
        if (longer.size() > needle.size() && longer.compare(0, needle.size(), needle) == 0) {
          report.findings.push_back({Finding::Kind::prefix_term, axis.name, shorter, {},
                                     shorter + " is a word prefix of " + longer});
        }
      }
    }
  }
  return report;
}

}  // namespace bipol
