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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lexctc/ctc.hpp"
#include "oracles.hpp"

namespace lexctc {
namespace {

TEST(AlphabetTest, BlankIsLastAndSeparatorPrecedesIt) {
  const Alphabet plain(U"abc");
  EXPECT_EQ(plain.size(), 4u);
  EXPECT_EQ(plain.blank_index(), 3u);
  const Alphabet sep(U"abc", U'|');
  EXPECT_EQ(sep.size(), 5u);
  EXPECT_EQ(sep.index_of(U'|'), 3u);
  EXPECT_EQ(sep.blank_index(), 4u);
  EXPECT_EQ(sep.labels(), U"abc|");
  EXPECT_FALSE(sep.index_of(U'x').has_value());
}

TEST(AlphabetTest, RejectsDuplicatesAndSeparatorCollision) {
  EXPECT_THROW(Alphabet(U"aba"), InputError);
  EXPECT_THROW(Alphabet(U"ab", U'a'), InputError);
}

TEST(PosteriorMatrixTest, ValidatesShapeAndEntries) {
  EXPECT_THROW(PosteriorMatrix(0, 2, {}), InputError);
  EXPECT_THROW(PosteriorMatrix(1, 1, {1.0}), InputError);
  EXPECT_THROW(PosteriorMatrix(1, 2, {1.0}), InputError);
  EXPECT_THROW(PosteriorMatrix(1, 2, {1.5, -0.5}), InputError);
  EXPECT_THROW(PosteriorMatrix(1, 2, {std::numeric_limits<double>::quiet_NaN(), 1.0}), InputError);
  EXPECT_THROW(PosteriorMatrix(1, 2, {0.5, 0.49}), InputError);
  EXPECT_NO_THROW(PosteriorMatrix(1, 2, {0.5, 0.5 + 5e-7}));
}

TEST(CollapseTest, DefinitionalCases) {
  const Alphabet a(U"ab");
  const std::size_t A = 0, B = 1, blank = 2;
  EXPECT_EQ(collapse(std::vector<std::size_t>{A, A, blank, B}, a), U"ab");
  EXPECT_EQ(collapse(std::vector<std::size_t>{blank, blank}, a), U"");
  EXPECT_EQ(collapse(std::vector<std::size_t>{A, blank, A}, a), U"aa");
  EXPECT_THROW(collapse(std::vector<std::size_t>{3}, a), InputError);
}

TEST(CollapseTest, ReexpandingALabelingCollapsesToItself) {
  std::mt19937_64 rng(11);
  const Alphabet a(U"abc");
  std::uniform_int_distribution<std::size_t> col(0, 3);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::size_t> path(8);
    for (auto& c : path) c = col(rng);
    const auto l = collapse(path, a);
    // One frame per symbol, blanks only between repeats.
    std::vector<std::size_t> again;
    for (std::size_t k = 0; k < l.size(); ++k) {
      if (k > 0 && l[k] == l[k - 1]) again.push_back(3);
      again.push_back(*a.index_of(l[k]));
    }
    EXPECT_EQ(collapse(again, a), l);
  }
}

TEST(BestPathTest, HandExamples) {
  const Alphabet a(U"a");
  auto d = best_path_decode(PosteriorMatrix(1, 2, {0.9, 0.1}), a);
  EXPECT_EQ(d.text, U"a");
  EXPECT_DOUBLE_EQ(d.likelihood, 0.9);
  d = best_path_decode(PosteriorMatrix(2, 2, {0.6, 0.4, 0.3, 0.7}), a);
  EXPECT_EQ(d.text, U"a");
  EXPECT_DOUBLE_EQ(d.likelihood, 0.6 * 0.7);
}

TEST(BestPathTest, MatchesNaiveRowArgmax) {
  std::mt19937_64 rng(5);
  const Alphabet a(U"xyz");
  for (int i = 0; i < 200; ++i) {
    const auto m = testing::random_matrix(rng, 5, 4);
    std::vector<char32_t> path;
    double p = 1.0;
    for (std::size_t t = 0; t < 5; ++t) {
      std::size_t best = 0;
      for (std::size_t c = 1; c < 4; ++c)
        if (m(t, c) > m(t, best)) best = c;
      p *= m(t, best);
      path.push_back(best == 3 ? U'-' : U"xyz"[best]);
    }
    const auto d = best_path_decode(m, a);
    EXPECT_EQ(d.text, testing::naive_collapse(path, U'-'));
    EXPECT_EQ(d.likelihood, p);
  }
}

TEST(BestPathTest, RejectsIncompatibleMatrix) {
  EXPECT_THROW(best_path_decode(PosteriorMatrix(1, 2, {0.5, 0.5}), Alphabet(U"ab")), InputError);
}

TEST(LabelingProbabilityTest, HandExamples) {
  const Alphabet a(U"a");
  const PosteriorMatrix m(1, 2, {0.9, 0.1});
  EXPECT_DOUBLE_EQ(labeling_probability(m, U"", a), 0.1);
  EXPECT_DOUBLE_EQ(labeling_probability(m, U"a", a), 0.9);
  EXPECT_EQ(labeling_probability(m, U"aa", a), 0.0);
}

TEST(LabelingProbabilityTest, MatchesPathEnumeration) {
  std::mt19937_64 rng(17);
  const Alphabet a(U"ab");
  for (int i = 0; i < 20; ++i) {
    const auto m = testing::random_matrix(rng, 3, 3);
    const auto oracle = testing::brute_distribution(m, U"ab");
    double total = 0.0;
    for (const auto& [l, p] : oracle) {
      EXPECT_NEAR(labeling_probability(m, l, a), p, 1e-12);
      total += labeling_probability(m, l, a);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const auto dist = labeling_distribution(m, a);
    ASSERT_EQ(dist.size(), oracle.size());
    for (const auto& [l, p] : dist) EXPECT_NEAR(p, oracle.at(l), 1e-12);
  }
}

TEST(LabelingProbabilityTest, ForeignSymbolsAndHugeInputs) {
  const Alphabet a(U"a");
  // No path collapses to a symbol outside the alphabet.
  EXPECT_EQ(labeling_probability(PosteriorMatrix(1, 2, {0.5, 0.5}), U"b", a), 0.0);
  std::vector<double> rows;
  for (int t = 0; t < 30; ++t) rows.insert(rows.end(), {0.5, 0.5});
  EXPECT_THROW(labeling_probability(PosteriorMatrix(30, 2, rows), U"a", a), CapacityError);
}

}  // namespace
}  // namespace lexctc
