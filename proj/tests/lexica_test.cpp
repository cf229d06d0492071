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

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "bipol/lexica.hpp"
#include "test_util.hpp"

namespace bipol {
namespace {

using testing::TempDir;

std::string numbered_terms(const std::string& prefix, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += prefix + std::to_string(i) + "\n";
  return out;
}

TEST(LoadAxisSet, PublishedLexicaSizes) {
  TempDir dir;
  dir.write("gender_female.txt", numbered_terms("f", 76));
  dir.write("gender_male.txt", numbered_terms("m", 46));
  dir.write("racial_black.txt", numbered_terms("b", 84));
  dir.write("racial_white.txt", numbered_terms("w", 127));
  dir.write("religious_christian.txt", numbered_terms("c", 180));
  dir.write("religious_muslim.txt", numbered_terms("u", 465));
  dir.write("religious_hindu.txt", numbered_terms("h", 179));
  const AxisSet set = load_axis_set(dir.path());
  ASSERT_EQ(set.axis_count(), 3u);
  EXPECT_EQ(set.axes[0].name, "gender");
  EXPECT_EQ(set.axes[1].name, "racial");
  EXPECT_EQ(set.axes[2].name, "religious");
  EXPECT_EQ(set.find("gender")->types[0].type_name, "female");
  EXPECT_EQ(set.find("gender")->types[0].size(), 76u);
  EXPECT_EQ(set.find("gender")->types[1].size(), 46u);
  EXPECT_EQ(set.find("racial")->types[0].size(), 84u);
  EXPECT_EQ(set.find("racial")->types[1].size(), 127u);
  // lexicographic file order: christian, hindu, muslim
  const auto& rel = set.find("religious")->types;
  EXPECT_EQ(rel[0].type_name, "christian");
  EXPECT_EQ(rel[0].size(), 180u);
  EXPECT_EQ(rel[1].type_name, "hindu");
  EXPECT_EQ(rel[1].size(), 179u);
  EXPECT_EQ(rel[2].type_name, "muslim");
  EXPECT_EQ(rel[2].size(), 465u);
}

TEST(LoadAxisSet, MinimalValidInput) {
  TempDir dir;
  dir.write("a_one.txt", "x\n");
  dir.write("a_two.txt", "x\n");
  const AxisSet set = load_axis_set(dir.path());
  ASSERT_EQ(set.axis_count(), 1u);
  ASSERT_EQ(set.axes[0].types.size(), 2u);
  EXPECT_EQ(set.axes[0].types[0].terms, std::vector<std::string>{"x"});
  EXPECT_EQ(set.axes[0].types[1].terms, std::vector<std::string>{"x"});
}

TEST(LoadAxisSet, NormalizesAndDropsDuplicates) {
  TempDir dir;
  dir.write("g_f.txt", "she\nshe\n her ");
  dir.write("g_m.txt", "he\n");
  const AxisSet set = load_axis_set(dir.path());
  const Lexicon& f = set.axes[0].types[0];
  EXPECT_EQ(f.terms, (std::vector<std::string>{"she", "her"}));
  EXPECT_EQ(f.duplicates_dropped, 1u);
}

TEST(LoadAxisSet, CommentsBlankLinesAndCrlf) {
  TempDir dir;
  dir.write("g_f.txt", "# source: somewhere\r\n\r\nShe\r\nBetter Half\r\n");
  dir.write("g_m.txt", "He\n\n# trailing comment\n");
  const AxisSet set = load_axis_set(dir.path());
  EXPECT_EQ(set.axes[0].types[0].terms, (std::vector<std::string>{"she", "better half"}));
  EXPECT_EQ(set.axes[0].types[1].terms, std::vector<std::string>{"he"});
}

TEST(LoadAxisSet, SplitsFilenameOnFirstUnderscore) {
  TempDir dir;
  dir.write("racial_white_european.txt", "x\n");
  dir.write("racial_black.txt", "y\n");
  dir.write("README.md", "not a lexicon\n");
  dir.write("notes.txt", "no underscore, ignored\n");
  const AxisSet set = load_axis_set(dir.path());
  ASSERT_EQ(set.axis_count(), 1u);
  EXPECT_EQ(set.axes[0].types[1].type_name, "white_european");
}

TEST(LoadAxisSet, Errors) {
  EXPECT_THROW((void)load_axis_set("/nonexistent/bipol/lexica"), DataError);
  {
    TempDir dir;
    EXPECT_THROW((void)load_axis_set(dir.path()), DataError);  // no lexicon files
  }
  {
    TempDir dir;
    dir.write("gender_female.txt", "she\n");
    dir.write("racial_black.txt", "x\n");
    dir.write("racial_white.txt", "y\n");
    EXPECT_THROW((void)load_axis_set(dir.path()), DataError);  // gender has one type
  }
  {
    TempDir dir;
    dir.write("g_f.txt", "# only a comment\n\n");
    dir.write("g_m.txt", "he\n");
    EXPECT_THROW((void)load_axis_set(dir.path()), DataError);  // empty lexicon
  }
  {
    TempDir dir;
    dir.write("g_f.txt", "one two three four five six seven eight nine\n");
    dir.write("g_m.txt", "he\n");
    EXPECT_THROW((void)load_axis_set(dir.path()), DataError);  // too many words
  }
}

TEST(LoadAxisSet, EightWordTermsAreAccepted) {
  TempDir dir;
  dir.write("g_f.txt", "one two three four five six seven eight\n");
  dir.write("g_m.txt", "he\n");
  EXPECT_EQ(load_axis_set(dir.path()).axes[0].types[0].terms.front(), "one two three four five six seven eight");
}

TEST(LoadAxisSet, DeterministicAndRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n_terms(1, 12);
  std::uniform_int_distribution<int> letter(0, 25);
  for (int trial = 0; trial < 20; ++trial) {
    TempDir src;
    const int axes = 1 + trial % 3;
    for (int a = 0; a < axes; ++a) {
      for (int t = 0; t < 2 + (trial + a) % 2; ++t) {
        std::string body = "# generated\n";
        for (int k = n_terms(rng); k > 0; --k) {
          body += std::string(1, static_cast<char>('A' + letter(rng))) + std::string(1, static_cast<char>('a' + letter(rng)));
          body += (k % 3 == 0) ? " Extra\r\n" : "\n";
        }
        src.write("ax" + std::to_string(a) + "_type" + std::to_string(t) + ".txt", body);
      }
    }
    const AxisSet first = load_axis_set(src.path());
    const AxisSet second = load_axis_set(src.path());
    ASSERT_EQ(first, second);
    TempDir out;
    write_axis_set(first, out.path());
    ASSERT_EQ(load_axis_set(out.path()), first);
    ASSERT_EQ(fingerprint(load_axis_set(out.path())), fingerprint(first));
  }
}

TEST(WriteAxisSet, RejectsAxisNamesWithUnderscore) {
  AxisSet set;
  set.axes.push_back(Axis{"bad_axis", {Lexicon{"bad_axis", "a", {"x"}}, Lexicon{"bad_axis", "b", {"y"}}}});
  TempDir out;
  EXPECT_THROW(write_axis_set(set, out.path()), std::invalid_argument);
}

AxisSet gender_set(std::vector<std::string> female, std::vector<std::string> male) {
  Lexicon f{"gender", "female", {}};
  for (auto& t : female) f.add(t);
  Lexicon m{"gender", "male", {}};
  for (auto& t : male) m.add(t);
  return make_axis_set({f, m});
}

TEST(ValidateAxisSet, UniqueTerm) {
  const auto report = validate_axis_set(gender_set({"she", "love"}, {"he"}));
  ASSERT_TRUE(report.has(Finding::Kind::unique_term, "love"));
  bool found = false;
  for (const auto* f : report.of_kind(Finding::Kind::unique_term))
    if (f->term == "love") found = f->message == "love unique to female";
  EXPECT_TRUE(found);
}

TEST(ValidateAxisSet, DisjointHasNoSharedTerms) {
  const auto report = validate_axis_set(gender_set({"she", "her"}, {"he", "him"}));
  EXPECT_TRUE(report.of_kind(Finding::Kind::shared_term).empty());
  ASSERT_EQ(report.of_kind(Finding::Kind::type_count).size(), 1u);
  EXPECT_EQ(report.of_kind(Finding::Kind::type_count)[0]->message, "gender: 2 types (female 2, male 2)");
}

TEST(ValidateAxisSet, SharedTerm) {
  const auto report = validate_axis_set(gender_set({"she", "old"}, {"he", "old"}));
  ASSERT_TRUE(report.has(Finding::Kind::shared_term, "old"));
  const auto shared = report.of_kind(Finding::Kind::shared_term);
  ASSERT_EQ(shared.size(), 1u);
  EXPECT_EQ(shared[0]->types, (std::vector<std::string>{"female", "male"}));
}

TEST(ValidateAxisSet, WordPrefix) {
  const auto report = validate_axis_set(gender_set({"better half", "better"}, {"he", "man", "manly"}));
  EXPECT_TRUE(report.has(Finding::Kind::prefix_term, "better"));
  EXPECT_FALSE(report.has(Finding::Kind::prefix_term, "man"));  // "manly" is a different word
}

TEST(ShippedLexica, LoadAndHaveExpectedAxes) {
  const AxisSet set = load_axis_set(BIPOL_TEST_LEXICA_DIR);
  ASSERT_NE(set.find("gender"), nullptr);
  ASSERT_NE(set.find("racial"), nullptr);
  ASSERT_NE(set.find("religious"), nullptr);
  EXPECT_EQ(set.find("religious")->types.size(), 3u);
  EXPECT_TRUE(set.find("gender")->types[1].contains("man-sized"));
  EXPECT_TRUE(set.find("religious")->types[2].contains("'abd"));
  const auto report = validate_axis_set(set);
  EXPECT_TRUE(report.has(Finding::Kind::shared_term, "ann"));
}

}  // namespace
}  // namespace bipol
