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

#include <random>

#include "lexctc/coding_scheme.hpp"
#include "oracles.hpp"

namespace lexctc {
namespace {

TEST(CodingSchemeTest, EncodeExamples) {
  const auto sep = CodingScheme::extra_separator(U'|');
  EXPECT_EQ(encode_label(U"Afdeeling", sep), U"Afdeeling|");
  EXPECT_EQ(encode_label(U"x", CodingScheme::plain()), U"x");
  EXPECT_EQ(encode_label(U"", sep), U"|");
  EXPECT_THROW(encode_label(U"a|b", sep), InputError);
}

TEST(CodingSchemeTest, DecodeIsTolerantAndFlagsTheSeparator) {
  const auto sep = CodingScheme::extra_separator(U'|');
  auto d = decode_label(U"advocaat|", sep);
  EXPECT_EQ(d.word, U"advocaat");
  EXPECT_TRUE(d.had_separator);
  d = decode_label(U"advocaat", sep);
  EXPECT_EQ(d.word, U"advocaat");
  EXPECT_FALSE(d.had_separator);
  EXPECT_EQ(decode_label(U"ab||", sep).word, U"ab|");  // exactly one is stripped
  EXPECT_EQ(decode_label(U"ab|", CodingScheme::plain()).word, U"ab|");
}

TEST(CodingSchemeTest, RoundTrip) {
  std::mt19937_64 rng(1);
  const auto sep = CodingScheme::extra_separator(U'#');
  for (int i = 0; i < 1000; ++i) {
    const auto w = testing::random_word(rng, U"abcdéü", 10);
    EXPECT_EQ(decode_label(encode_label(w, sep), sep).word, w);
    EXPECT_EQ(decode_label(encode_label(w, CodingScheme::plain()), CodingScheme::plain()).word, w);
  }
}

std::u32string letters(std::size_t n) {
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<char32_t>(0x100 + i);
  return s;
}

TEST(CodingSchemeTest, AugmentedColumnCounts) {
  const auto sep = CodingScheme::extra_separator(U'|');
  EXPECT_EQ(augment_alphabet(Alphabet(letters(80)), sep).size(), 82u);
  EXPECT_EQ(augment_alphabet(Alphabet(letters(52)), sep).size(), 54u);
  EXPECT_EQ(augment_alphabet(Alphabet(letters(52)), CodingScheme::plain()).size(), 53u);
  const auto a = augment_alphabet(Alphabet(U"xyz"), sep);
  EXPECT_EQ(a.labels(), U"xyz|");
  EXPECT_EQ(a.index_of(U'|'), 3u);
  EXPECT_EQ(a.blank_index(), 4u);
  EXPECT_THROW(augment_alphabet(Alphabet(U"x|"), sep), InputError);
  EXPECT_THROW(augment_alphabet(a, sep), InputError);
}

TEST(CodingSchemeTest, SeparatorSelection) {
  EXPECT_EQ(select_separator(U"abc"), U'|');
  EXPECT_EQ(select_separator(U"a|b"), U'#');
  EXPECT_EQ(select_separator(U"|#~"), U'¤');
  EXPECT_FALSE(select_separator(U"|#~¤").has_value());
}

}  // namespace
}  // namespace lexctc
