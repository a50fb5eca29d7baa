// Copyright 2026 The lexctc Authors.
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


#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lexctc/eval.hpp"

namespace lexctc {
namespace {

std::string random_string(std::mt19937_64& rng, const std::string& chars, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, chars.size() - 1);
  std::string s;
  for (std::size_t i = len(rng); i > 0; --i) s += chars[pick(rng)];
  return s;
}

/// Textbook full-table edit distance over bytes (ASCII inputs only).
std::size_t table_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

TEST(LevenshteinTest, Examples) {
  EXPECT_EQ(levenshtein(std::string_view(""), std::string_view("abc")), 3u);
  EXPECT_EQ(levenshtein(std::string_view("word"), std::string_view("word")), 0u);
  EXPECT_EQ(levenshtein(std::string_view("kitten"), std::string_view("sitting")), 3u);
  // Accented characters are single units, whatever their encoding.
  EXPECT_EQ(levenshtein(std::string_view("caf\xC3\xA9"), std::string_view("cafe\xCC\x81")), 0u);
  EXPECT_EQ(levenshtein(std::string_view("caf\xC3\xA9"), std::string_view("cafe")), 1u);
}

TEST(LevenshteinTest, MetricAxiomsAndTableOracle) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_string(rng, "abc", 7), b = random_string(rng, "abc", 7),
               c = random_string(rng, "abc", 7);
    const auto ab = levenshtein(std::string_view(a), std::string_view(b));
    EXPECT_EQ(ab, table_distance(a, b));
    EXPECT_EQ(ab, levenshtein(std::string_view(b), std::string_view(a)));
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(levenshtein(std::string_view(a), std::string_view(c)),
              ab + levenshtein(std::string_view(b), std::string_view(c)));
  }
}

TEST(WordAccuracyTest, Basics) {
  const std::vector<std::string> gts{"abc", "Déjà", "x"};
  EXPECT_DOUBLE_EQ(word_accuracy(gts, gts, false), 100.0);
  const std::vector<std::string> p{"Abc"}, g{"abc"};
  EXPECT_DOUBLE_EQ(word_accuracy(p, g, true), 100.0);
  EXPECT_DOUBLE_EQ(word_accuracy(p, g, false), 0.0);
  // Accents stay significant even when case is folded.
  const std::vector<std::string> p2{"DEJA"}, g2{"déjà"};
  EXPECT_DOUBLE_EQ(word_accuracy(p2, g2, true), 0.0);
  const std::vector<std::string> p3{"DÉJÀ"};
  EXPECT_DOUBLE_EQ(word_accuracy(p3, g2, true), 100.0);
  EXPECT_THROW(word_accuracy(p, gts, false), InputError);
  EXPECT_THROW(word_accuracy(std::vector<std::string>{}, std::vector<std::string>{}, false),
               InputError);
}

TEST(WordAccuracyTest, PlantedMatches) {
  std::mt19937_64 rng(2);
  for (std::size_t planted : {0u, 1u, 437u, 999u, 1000u}) {
    std::vector<std::string> gts, preds;
    for (std::size_t i = 0; i < 1000; ++i) {
      gts.push_back("w" + std::to_string(i));
      preds.push_back(i < planted ? gts.back() : "v" + std::to_string(i));
    }
    std::vector<std::size_t> order(1000);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::string> g2, p2;
    for (auto k : order) {
      g2.push_back(gts[k]);
      p2.push_back(preds[k]);
    }
    EXPECT_DOUBLE_EQ(word_accuracy(p2, g2, false), static_cast<double>(planted) / 10.0);
  }
}

TEST(WordAccuracyTest, CaseFoldingNeverHurts) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> p, g;
    for (int k = 0; k < 20; ++k) {
      g.push_back(random_string(rng, "aAbB", 3) + "x");
      p.push_back(random_string(rng, "aAbB", 3) + "x");
    }
    EXPECT_GE(word_accuracy(p, g, true), word_accuracy(p, g, false));
  }
}

TEST(OovSplitTest, PartitionsIndices) {
  const std::vector<std::string> vocab{"a"}, test{"a", "b"};
  const auto s = oov_split(vocab, test, false);
  EXPECT_EQ(s.inv, std::vector<std::size_t>{0});
  EXPECT_EQ(s.oov, std::vector<std::size_t>{1});
  const auto all = oov_split(std::vector<std::string>{}, test, false);
  EXPECT_TRUE(all.inv.empty());
  EXPECT_EQ(all.oov.size(), 2u);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    std::vector<std::string> v, t;
    for (int k = 0; k < 10; ++k) v.push_back(random_string(rng, "aB", 3));
    for (int k = 0; k < 30; ++k) t.push_back(random_string(rng, "aB", 3));
    for (bool ci : {false, true}) {
      const auto split = oov_split(v, t, ci);
      EXPECT_EQ(split.inv.size() + split.oov.size(), t.size());
      for (auto k : split.inv) {
        bool found = false;
        for (const auto& w : v) found |= ci ? eval_key(w, true) == eval_key(t[k], true) : w == t[k];
        EXPECT_TRUE(found);
      }
      for (auto k : split.oov)
        for (const auto& w : v) EXPECT_NE(eval_key(w, ci), eval_key(t[k], ci));
    }
  }
}

TEST(LengthBreakdownTest, PlantedBucketRates) {
  std::vector<std::string> g, p;
  // Length 2: 3 of 4 right; length 5: 1 of 2 right; length 1: 0 of 1.
  for (int i = 0; i < 4; ++i) {
    g.push_back("ab");
    p.push_back(i < 3 ? "ab" : "ba");
  }
  g.insert(g.end(), {"abcde", "abcde", "z"});
  p.insert(p.end(), {"abcde", "abcdf", "y"});
  const auto b = length_breakdown(p, g);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_DOUBLE_EQ(b.at(2).accuracy(), 75.0);
  EXPECT_DOUBLE_EQ(b.at(5).accuracy(), 50.0);
  EXPECT_DOUBLE_EQ(b.at(1).accuracy(), 0.0);
  std::size_t total = 0;
  for (const auto& [len, bucket] : b) total += bucket.count;
  EXPECT_EQ(total, g.size());
}

TEST(EvaluateTest, ReportAndSerialisation) {
  const std::vector<std::string> g{"abc", "abc", "de", "fgh"}, p{"abc", "abd", "de", "fgh"};
  const std::vector<std::string> vocab{"abc", "de"};
  const auto r = evaluate(p, g, false, std::span<const std::string>(vocab));
  EXPECT_EQ(r.samples, 4u);
  EXPECT_DOUBLE_EQ(r.word_accuracy, 75.0);
  EXPECT_DOUBLE_EQ(r.mean_edit_distance, 0.25);
  ASSERT_TRUE(r.inv && r.oov);
  EXPECT_EQ(r.inv->count, 3u);
  EXPECT_EQ(r.oov->count, 1u);
  ASSERT_EQ(r.confusions.size(), 1u);
  EXPECT_EQ(r.confusions[0].pred, "abd");
  const auto kv = format_kv(r);
  EXPECT_NE(kv.find("word_accuracy 75.0000\n"), std::string::npos);
  EXPECT_NE(kv.find("oov_count 1\n"), std::string::npos);
  EXPECT_NE(kv.find("class.abc 2 50.0000 inv\n"), std::string::npos);
  EXPECT_NE(format_table(r).find("word accuracy (%)  75.00"), std::string::npos);
}

}  // namespace
}  // namespace lexctc
