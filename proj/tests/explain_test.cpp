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

#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "bipol/explain.hpp"
#include "bipol/sentence.hpp"
#include "oracle.hpp"

namespace bipol {
namespace {

Lexicon lexicon(std::string axis, std::string type, std::vector<std::string> terms) {
  Lexicon lex{std::move(axis), std::move(type), {}};
  for (const auto& t : terms) lex.add(t);
  return lex;
}

AxisSet gender() {
  return make_axis_set({lexicon("gender", "female", {"she", "her", "love", "old"}),
                        lexicon("gender", "male", {"he", "him", "his"})});
}

ExplainRecord record_of(const AxisSet& set, const std::vector<std::string>& texts) {
  const TermMatcher matcher(set);
  std::vector<SentenceEvaluation> evals;
  for (std::size_t i = 0; i < texts.size(); ++i) evals.push_back(evaluate_sentence(std::to_string(i), texts[i], set, matcher));
  return aggregate(evals, set);
}

TEST(Aggregate, SumsPerSentenceCounts) {
  const AxisSet set = gender();
  const auto rec = record_of(set, {"he said he would", "he told him he was he"});
  const auto* g = rec.find("gender");
  ASSERT_NE(g, nullptr);
  EXPECT_EQ(g->types[1].table.count_of("he"), 2u + oracle::term_count("he told him he was he", "he"));
  EXPECT_EQ(g->types[1].table.count_of("him"), 1u);
}

TEST(Aggregate, SnapshotShape) {
  const AxisSet set = gender();
  const auto rec = record_of(set, {"She loves her work", "He and him"});
  ASSERT_EQ(rec.per_axis.size(), 1u);
  ASSERT_EQ(rec.per_axis[0].types.size(), 2u);
  EXPECT_EQ(rec.per_axis[0].types[0].type_name, "female");
  // every term present, zeros included, in lexicon order
  ASSERT_EQ(rec.per_axis[0].types[0].table.entries.size(), 4u);
  EXPECT_EQ(rec.per_axis[0].types[0].table.entries[0].first, "she");
  EXPECT_EQ(rec.per_axis[0].types[0].table.count_of("old"), 0u);
}

TEST(Aggregate, EmptyPopulationGivesZeroTables) {
  const AxisSet set = gender();
  const auto rec = aggregate({}, set);
  for (const auto& type : rec.per_axis[0].types) {
    EXPECT_EQ(type.table.total(), 0u);
    EXPECT_FALSE(type.table.entries.empty());
  }
}

TEST(Aggregate, PartitionAndOrderInsensitive) {
  const AxisSet set = gender();
  const TermMatcher matcher(set);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SentenceEvaluation> evals;
    for (int i = 0; i < 12; ++i) evals.push_back(evaluate_sentence("s", oracle::random_text(rng), set, matcher));
    const auto whole = aggregate(evals, set);
    ExplainAccumulator left(set.term_slot_count());
    ExplainAccumulator right(set.term_slot_count());
    for (std::size_t i = 0; i < evals.size(); ++i) (i < 5 ? left : right).add(evals[i]);
    right.merge(left);
    ASSERT_EQ(right.record(set), whole);
    std::shuffle(evals.begin(), evals.end(), rng);
    ASSERT_EQ(aggregate(evals, set), whole);
  }
}

TEST(TopK, MostFrequentFirst) {
  ExplainRecord rec{{AxisTerms{"gender",
                               {TypeTerms{"female", {{{"she", 1593}, {"her", 1492}, {"old", 0}}}},
                                TypeTerms{"male", {{{"he", 6589}, {"him", 1577}}}}}}}};
  const auto top = top_k(rec, "gender", 10);
  ASSERT_EQ(top.size(), 4u);  // zero-count "old" dropped
  EXPECT_EQ(top[0], (RankedTerm{"he", "male", 6589}));
  EXPECT_EQ(top[1].term, "she");
}

TEST(TopK, LexicographicTieBreakAndTruncation) {
  ExplainRecord rec{{AxisTerms{"x", {TypeTerms{"t1", {{{"c", 1}, {"b", 2}}}}, TypeTerms{"t2", {{{"a", 2}}}}}}}};
  const auto top = top_k(rec, "x", 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top[0].term, "a");
  EXPECT_EQ(top[1].term, "b");
}

TEST(TopK, EmptyAndErrors) {
  const AxisSet set = gender();
  const auto rec = aggregate({}, set);
  EXPECT_TRUE(top_k(rec, "gender", 10).empty());
  EXPECT_THROW((void)top_k(rec, "racial", 10), std::invalid_argument);
  EXPECT_THROW((void)top_k(rec, "gender", 0), std::invalid_argument);
}

TEST(TopK, PrefixProperty) {
  const AxisSet set = gender();
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> texts;
    for (int i = 0; i < 5; ++i) texts.push_back(oracle::random_text(rng));
    const auto rec = record_of(set, texts);
    for (std::size_t k = 1; k < 8; ++k) {
      const auto a = top_k(rec, "gender", k);
      const auto b = top_k(rec, "gender", k + 1);
      ASSERT_LE(a.size(), b.size());
      ASSERT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    }
  }
}

TEST(Neutralize, PutsTermsInEveryTypeOfTheirAxis) {
  const AxisSet set = gender();
  const std::vector<std::string> terms{"love", "old"};
  const auto result = neutralize(set, terms);
  for (const auto& lex : result.axes.find("gender")->types) {
    EXPECT_TRUE(lex.contains("love"));
    EXPECT_TRUE(lex.contains("old"));
  }
  EXPECT_TRUE(result.not_found.empty());
  EXPECT_FALSE(set.find("gender")->types[1].contains("love"));  // original untouched
}

TEST(Neutralize, UnknownTermIsNoOp) {
  const AxisSet set = gender();
  const std::vector<std::string> terms{"zebra"};
  const auto result = neutralize(set, terms);
  EXPECT_EQ(result.axes, set);
  EXPECT_EQ(result.not_found, terms);
}

// Numerator |S1 - S2| of every axis, computed by the brute-force counter.
std::vector<std::uint64_t> numerators(const AxisSet& set, const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& axis : set.axes) {
    std::vector<std::uint64_t> sums;
    for (const auto& lex : axis.types) {
      std::uint64_t s = 0;
      for (const auto& t : lex.terms) s += oracle::term_count(text, t);
      sums.push_back(s);
    }
    std::sort(sums.begin(), sums.end(), std::greater<>());
    out.push_back(sums[0] - sums[1]);
  }
  return out;
}

AxisSet without(const AxisSet& set, const std::vector<std::string>& removed) {
  AxisSet out = set;
  for (auto& axis : out.axes)
    for (auto& lex : axis.types)
      std::erase_if(lex.terms, [&](const std::string& t) { return std::find(removed.begin(), removed.end(), t) != removed.end(); });
  return out;
}

TEST(Neutralize, NumeratorEqualsDeletionOracle) {
  const AxisSet set = make_axis_set({lexicon("gender", "female", {"she", "her", "love", "old"}),
                                     lexicon("gender", "male", {"he", "him", "his", "man"}),
                                     lexicon("misc", "a", {"red", "sky", "old"}), lexicon("misc", "b", {"go", "x"}),
                                     lexicon("misc", "c", {"7", "the"})});
  const std::vector<std::string> subjective{"love", "old"};
  const auto neutral = neutralize(set, subjective).axes;
  const auto deleted = without(set, subjective);
  const TermMatcher matcher(neutral);
  std::mt19937_64 rng(77);
  for (int i = 0; i < 1000; ++i) {
    const std::string text = oracle::random_text(rng);
    const auto expected = numerators(deleted, text);
    ASSERT_EQ(numerators(neutral, text), expected) << text;
    const auto eval = evaluate_sentence("s", text, neutral, matcher);
    for (std::size_t a = 0; a < neutral.axes.size(); ++a) {
      auto sums = eval.per_axis[a].type_sums;
      std::sort(sums.begin(), sums.end(), std::greater<>());
      ASSERT_EQ(sums[0] - sums[1], expected[a]) << text;
    }
  }
}

}  // namespace
}  // namespace bipol
