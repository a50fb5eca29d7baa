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

#include "lexctc/random.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {
namespace {

TEST(UnicodeTest, Utf8RoundTrip) {
  const std::string s = "a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80";  // a é € 😀
  const auto u = utf8_to_u32(s);
  EXPECT_EQ(u, (std::u32string{U'a', 0xE9, 0x20AC, 0x1F600}));
  EXPECT_EQ(u32_to_utf8(u), s);
  EXPECT_THROW(utf8_to_u32("\xC3"), InputError);
  EXPECT_THROW(utf8_to_u32("\xC0\x80"), InputError);  // overlong
}

TEST(UnicodeTest, CanonicalComposition) {
  EXPECT_EQ(nfc(U"é"), U"é");
  EXPECT_EQ(nfc(U"é"), U"é");
  EXPECT_EQ(nfc(U"ậ"), U"ậ");  // a, dot below, circumflex
  EXPECT_EQ(nfc(U"ậ"), U"ậ");  // marks in the other order
  EXPECT_EQ(nfc(U"각"), U"각");  // Hangul L V T
  EXPECT_EQ(nfc(U"Å"), U"Å");              // Angstrom sign is a singleton
  EXPECT_EQ(nfc(U"q̣̇"), U"q̣̇");  // no composite: canonical order only
}

TEST(UnicodeTest, SimpleLowercase) {
  EXPECT_EQ(to_lower(U"ÀÉÎÕÜ ABC Ω"), U"àéîõü abc ω");
  EXPECT_EQ(to_lower(U'1'), U'1');
}

TEST(RandomTest, DerivedStreamsAreStable) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(uniform_below(rng, 7), 7u);
  }
}

}  // namespace
}  // namespace lexctc
