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
#include <set>
#include <vector>

#include "lexctc/experiments.hpp"
#include "lexctc/synth.hpp"

namespace lexctc {
namespace {

RecognizerSim sim_for(const CodingScheme& scheme, double noise, std::uint64_t seed) {
  RecognizerSim s;
  s.alphabet = augment_alphabet(Alphabet(latin_lowercase()), scheme);
  s.noise_level = noise;
  s.seed = seed;
  return s;
}

TEST(SynthTest, NoiselessMatrixDecodesExactly) {
  for (const auto& scheme : {CodingScheme::plain(), CodingScheme::extra_separator(U'|')}) {
    const auto sim = sim_for(scheme, 0.0, 1);
    for (const std::u32string w : {U"advocaat", U"afdeeling", U"a", U"zzz"}) {
      const auto m = emit(sim, w, scheme);
      EXPECT_EQ(best_path_decode(m, sim.alphabet).text, encode_label(w, scheme));
    }
  }
}

TEST(SynthTest, ShapeAndDeterminism) {
  const auto scheme = CodingScheme::extra_separator(U'|');
  const auto sim = sim_for(scheme, 0.4, 9);
  const auto a = emit(sim, U"deel", scheme);
  const auto b = emit(sim, U"deel", scheme);
  EXPECT_EQ(a.data(), b.data());
  // 5 label symbols of 4 frames each plus 4 blank transitions.
  EXPECT_EQ(a.frames(), 5u * 4u + 4u);
  EXPECT_EQ(a.columns(), 28u);
  auto other = sim;
  other.seed = 10;
  EXPECT_NE(emit(other, U"deel", scheme).data(), a.data());
}

TEST(SynthTest, InputValidation) {
  const auto sim = sim_for(CodingScheme::plain(), 0.1, 1);
  EXPECT_THROW(emit(sim, U"ABC", CodingScheme::plain()), InputError);
  EXPECT_THROW(emit(sim, U"", CodingScheme::plain()), InputError);
  EXPECT_THROW(emit(sim, U"ab", CodingScheme::extra_separator(U'|')), InputError);
}

TEST(SynthTest, ExpectedPeakMassIsOneMinusNoise) {
  const auto scheme = CodingScheme::plain();
  for (double noise : {0.1, 0.4, 0.7}) {
    double peak = 0.0;
    std::size_t rows = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      auto sim = sim_for(scheme, noise, seed);
      sim.blank_frames = 0;
      const auto m = emit(sim, U"q", scheme);
      for (std::size_t t = 0; t < m.frames(); ++t, ++rows) peak += m(t, 16);  // 'q'
    }
    EXPECT_NEAR(peak / static_cast<double>(rows), 1.0 - noise, 0.02) << noise;
  }
}

TEST(SynthTest, EnsembleSeedsAndJitter) {
  const auto proto = sim_for(CodingScheme::plain(), 0.4, 0);
  EXPECT_EQ(make_ensemble(proto, 3, 1, 0.05).size(), 1u);
  const auto sims = make_ensemble(proto, 3, 5, 0.05);
  std::set<std::uint64_t> seeds;
  for (const auto& s : sims) {
    seeds.insert(s.seed);
    EXPECT_LE(std::abs(s.noise_level - 0.4), 0.05);
  }
  EXPECT_EQ(seeds.size(), 5u);
}

double accuracy(const std::vector<Hypothesis>& hyps, const std::vector<std::u32string>& words) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < words.size(); ++i) hits += hyps[i].text == u32_to_utf8(words[i]);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(words.size());
}

struct SmallSetup {
  TrendConfig cfg;
  SyntheticDataset data;
  SchemeSetup plain;
  SmallSetup(std::size_t test_words)
      : cfg(make_cfg(test_words)), data(make_dataset(cfg)), plain(CodingScheme::plain(), data) {}
  static TrendConfig make_cfg(std::size_t n) {
    TrendConfig c;
    c.test_words = n;
    c.lexicon_size = 500;
    c.large_extra = 500;
    return c;
  }
};

TEST(SynthTest, DictionaryBeatsBestPathAtModerateNoise) {
  const SmallSetup s(1000);
  auto sim = sim_for(CodingScheme::plain(), 0.4, 5);
  const double bp = accuracy(run_recognizer(sim, s.plain, s.data.test, DecoderKind::best_path, 25), s.data.test);
  const double wc = accuracy(run_recognizer(sim, s.plain, s.data.test, DecoderKind::words_concise, 25), s.data.test);
  EXPECT_LT(bp, wc);
}

TEST(SynthTest, MembersDifferInAccuracy) {
  const SmallSetup s(300);
  const auto sims = make_ensemble(sim_for(CodingScheme::plain(), 0.4, 0), 11, 5, 0.03);
  std::set<double> accs;
  for (const auto& sim : sims)
    accs.insert(accuracy(run_recognizer(sim, s.plain, s.data.test, DecoderKind::best_path, 25), s.data.test));
  EXPECT_GT(accs.size(), 1u);
}

TEST(SynthTest, AccuracyFallsWithNoise) {
  const SmallSetup s(200);
  int inversions = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    double prev = 101.0;
    for (double noise : {0.3, 0.5, 0.7}) {
      const double acc = accuracy(
          run_recognizer(sim_for(CodingScheme::plain(), noise, seed), s.plain, s.data.test,
                         DecoderKind::words_concise, 25),
          s.data.test);
      if (acc > prev) ++inversions;
      prev = acc;
    }
  }
  EXPECT_LE(inversions, 1);
}

}  // namespace
}  // namespace lexctc
