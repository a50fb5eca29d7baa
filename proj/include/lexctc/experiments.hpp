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

#pragma once

// Desk-scale reproduction of the decoder and ensemble trends: a synthetic
// lexicon, simulated recognizers, and the decoder/voting pipeline on top.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "lexctc/coding_scheme.hpp"
#include "lexctc/ctc.hpp"
#include "lexctc/ensemble.hpp"
#include "lexctc/eval.hpp"
#include "lexctc/prefix_tree.hpp"
#include "lexctc/random.hpp"
#include "lexctc/synth.hpp"
#include "lexctc/word_beam_search.hpp"

namespace lexctc {

struct TrendConfig {
  std::uint64_t seed = 2024;
  std::size_t trials = 5;
  std::size_t test_words = 1000;
  std::size_t lexicon_size = 3000;
  std::size_t large_extra = 20000;
  std::size_t max_members = 10;
  double noise = 0.55;
  double jitter = 0.03;
  double confusion_spread = 1.0;
  std::size_t frames_per_char = 4;
  std::size_t width = 25;
};

inline const std::u32string& latin_lowercase() {
  static const std::u32string s = U"abcdefghijklmnopqrstuvwxyz";
  return s;
}

/// Pronounceable-looking random word: mostly alternating consonants and vowels.
inline std::u32string random_word(Rng& rng, std::size_t min_len, std::size_t max_len) {
  static const std::u32string consonants = U"bcdfghjklmnprstvwz";
  static const std::u32string vowels = U"aeiouy";
  const std::size_t len = min_len + uniform_below(rng, max_len - min_len + 1);
  std::u32string w;
  bool vowel = uniform01(rng) < 0.3;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& pool = vowel ? vowels : consonants;
    w.push_back(pool[uniform_below(rng, pool.size())]);
    if (uniform01(rng) < 0.8) vowel = !vowel;
  }
  return w;
}

struct SyntheticDataset {
  std::vector<std::u32string> concise;  // lexicon the test words come from
  std::vector<std::u32string> large;    // concise plus distractors
  std::vector<std::u32string> test;     // Zipf-distributed draws from concise
};

inline SyntheticDataset make_dataset(const TrendConfig& cfg) {
  static const std::u32string suffixes[] = {U"s", U"e", U"en", U"er", U"ing", U"t", U"es", U"ed"};
  Rng rng(derive_seed(cfg.seed, 0x1e41c0));
  SyntheticDataset d;
  std::set<std::u32string> seen;
  // Stems with a few inflected forms, so the lexicon has prefix relatives.
  while (d.concise.size() < cfg.lexicon_size) {
    auto stem = random_word(rng, 2, 10);
    if (!seen.insert(stem).second) continue;
    d.concise.push_back(stem);
    const std::size_t forms = uniform_below(rng, 3);
    for (std::size_t f = 0; f < forms && d.concise.size() < cfg.lexicon_size; ++f) {
      auto w = stem + suffixes[uniform_below(rng, std::size(suffixes))];
      if (seen.insert(w).second) d.concise.push_back(std::move(w));
    }
  }
  d.large = d.concise;
  const auto& letters = latin_lowercase();
  while (d.large.size() < cfg.lexicon_size + cfg.large_extra) {
    std::u32string w;
    if (uniform01(rng) < 0.5) {
      // One edit away from a lexicon word: the confusions a large lexicon adds.
      w = d.concise[uniform_below(rng, d.concise.size())];
      const std::size_t pos = uniform_below(rng, w.size());
      const char32_t c = letters[uniform_below(rng, letters.size())];
      switch (uniform_below(rng, 3)) {
        case 0: w[pos] = c; break;
        case 1: w.insert(w.begin() + static_cast<std::ptrdiff_t>(pos), c); break;
        default:
          if (w.size() > 1) w.erase(w.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    } else {
      w = random_word(rng, 2, 14);
    }
    if (seen.insert(w).second) d.large.push_back(std::move(w));
  }
  std::vector<double> cumulative(d.concise.size());
  double acc = 0.0;
  for (std::size_t r = 0; r < cumulative.size(); ++r) cumulative[r] = acc += 1.0 / (r + 1.0);
  for (std::size_t i = 0; i < cfg.test_words; ++i) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    d.test.push_back(d.concise[std::min<std::size_t>(it - cumulative.begin(), d.concise.size() - 1)]);
  }
  return d;
}

enum class DecoderKind { best_path, words_concise, words_large };

inline const char* to_string(DecoderKind k) {
  switch (k) {
    case DecoderKind::best_path: return "bestpath";
    case DecoderKind::words_concise: return "words-concise";
    case DecoderKind::words_large: return "words-large";
  }
  return "?";
}

/// Everything needed to decode one scheme: alphabet and dictionaries.
struct SchemeSetup {
  CodingScheme scheme;
  Alphabet alphabet;
  PrefixTree concise;
  PrefixTree large;

  SchemeSetup(const CodingScheme& s, const SyntheticDataset& data)
      : scheme(s), alphabet(augment_alphabet(Alphabet(latin_lowercase()), s)) {
    CharSet nonword;
    if (auto sep = s.separator()) nonword = CharSet{*sep};
    concise = PrefixTree::build(data.concise, latin_lowercase(), nonword);
    large = PrefixTree::build(data.large, latin_lowercase(), nonword);
  }
};

/// Decodes the test set with one recognizer; returns hypotheses in UTF-8
/// with the scheme's separator stripped. Each sample gets its own emission
/// seed, so repeated words are distinct "images".
inline std::vector<Hypothesis> run_recognizer(const RecognizerSim& sim, const SchemeSetup& setup,
                                              const std::vector<std::u32string>& words,
                                              DecoderKind decoder, std::size_t width) {
  std::vector<Hypothesis> out;
  out.reserve(words.size());
  std::optional<WordBeamSearch> search;
  if (decoder != DecoderKind::best_path)
    search.emplace(setup.alphabet,
                   decoder == DecoderKind::words_concise ? setup.concise : setup.large, nullptr,
                   width, ScoringMode::words(),
                   GrammarOptions::single_word(setup.scheme.separator()));
  RecognizerSim sample_sim = sim;
  for (std::size_t i = 0; i < words.size(); ++i) {
    sample_sim.seed = derive_seed(sim.seed, i);
    const auto m = emit(sample_sim, words[i], setup.scheme);
    const Decoded d = search ? search->decode(m) : best_path_decode(m, setup.alphabet);
    out.push_back({u32_to_utf8(decode_label(d.text, setup.scheme).word), d.likelihood});
  }
  return out;
}

inline double accuracy_of(const std::vector<Hypothesis>& hyps, const std::vector<std::string>& gts) {
  std::vector<std::string> preds;
  preds.reserve(hyps.size());
  for (const auto& h : hyps) preds.push_back(h.text);
  return word_accuracy(preds, gts, false);
}

/// Accuracy of plurality voting over the first k recognizers, k = 1..n.
inline std::vector<double> ensemble_curve(const std::vector<std::vector<Hypothesis>>& members,
                                          const std::vector<std::string>& gts) {
  std::vector<double> curve;
  std::vector<Hypothesis> ballot;
  for (std::size_t k = 1; k <= members.size(); ++k) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < gts.size(); ++i) {
      ballot.clear();
      for (std::size_t r = 0; r < k; ++r) ballot.push_back(members[r][i]);
      hits += vote(ballot).winner.text == gts[i];
    }
    curve.push_back(100.0 * static_cast<double>(hits) / static_cast<double>(gts.size()));
  }
  return curve;
}

struct TrialResult {
  std::uint64_t seed = 0;
  std::vector<double> member_accuracy;    // Words mode, concise, extra separator
  std::vector<double> ensemble_words;     // k = 1..max_members
  std::vector<double> ensemble_bestpath;  // k = 1..max_members
  double grid[2][3] = {};                 // [plain, extrasep][DecoderKind], member 0
};

struct TrendReport {
  TrendConfig config;
  std::size_t concise_size = 0;
  std::size_t large_size = 0;
  std::vector<TrialResult> trials;

  double mean_grid(std::size_t scheme, DecoderKind d) const {
    double s = 0.0;
    for (const auto& t : trials) s += t.grid[scheme][static_cast<int>(d)];
    return s / static_cast<double>(trials.size());
  }
  double mean_ensemble(std::size_t k, bool words = true) const {
    double s = 0.0;
    for (const auto& t : trials) s += (words ? t.ensemble_words : t.ensemble_bestpath)[k - 1];
    return s / static_cast<double>(trials.size());
  }
};

inline TrendReport run_trends(const TrendConfig& cfg) {
  const auto data = make_dataset(cfg);
  std::vector<std::string> gts;
  for (const auto& w : data.test) gts.push_back(u32_to_utf8(w));
  const auto sep = select_separator(latin_lowercase());
  const SchemeSetup plain(CodingScheme::plain(), data);
  const SchemeSetup extra(CodingScheme::extra_separator(*sep), data);

  TrendReport report;
  report.config = cfg;
  report.concise_size = data.concise.size();
  report.large_size = data.large.size();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    TrialResult r;
    r.seed = derive_seed(cfg.seed, 0x7a1a1 + trial);
    RecognizerSim proto;
    proto.frames_per_char = cfg.frames_per_char;
    proto.noise_level = cfg.noise;
    proto.confusion_spread = cfg.confusion_spread;
    auto sims = make_ensemble(proto, r.seed, cfg.max_members, cfg.jitter);

    std::vector<std::vector<Hypothesis>> words_members, bp_members;
    for (auto& sim : sims) {
      sim.alphabet = extra.alphabet;
      words_members.push_back(
          run_recognizer(sim, extra, data.test, DecoderKind::words_concise, cfg.width));
      bp_members.push_back(run_recognizer(sim, extra, data.test, DecoderKind::best_path, cfg.width));
      r.member_accuracy.push_back(accuracy_of(words_members.back(), gts));
    }
    r.ensemble_words = ensemble_curve(words_members, gts);
    r.ensemble_bestpath = ensemble_curve(bp_members, gts);

    r.grid[1][0] = accuracy_of(bp_members[0], gts);
    r.grid[1][1] = r.member_accuracy[0];
    r.grid[1][2] = accuracy_of(
        run_recognizer(sims[0], extra, data.test, DecoderKind::words_large, cfg.width), gts);
    RecognizerSim plain_sim = sims[0];
    plain_sim.alphabet = plain.alphabet;
    for (auto d : {DecoderKind::best_path, DecoderKind::words_concise, DecoderKind::words_large})
      r.grid[0][static_cast<int>(d)] =
          accuracy_of(run_recognizer(plain_sim, plain, data.test, d, cfg.width), gts);
    report.trials.push_back(std::move(r));
  }
  return report;
}

/// Deterministic text rendering of a trend run.
inline std::string format_trends(const TrendReport& rep) {
  std::string out;
  char buf[256];
  auto put = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
  };
  const auto& c = rep.config;
  out += "# synthetic decoder/ensemble trend report\n";
  put("seed %llu\ntrials %zu\ntest_words %zu\nconcise_dictionary %zu\nlarge_dictionary %zu\n",
      static_cast<unsigned long long>(c.seed), c.trials, c.test_words, rep.concise_size,
      rep.large_size);
  put("noise %.3f\njitter %.3f\nconfusion_spread %.3f\nframes_per_char %zu\nwidth %zu\n\n",
      c.noise, c.jitter, c.confusion_spread, c.frames_per_char, c.width);

  out += "## word accuracy (%) vs ensemble size (plurality voting, extra separator)\n";
  out += "members  words-concise  bestpath\n";
  for (std::size_t k = 1; k <= c.max_members; ++k)
    put("%7zu  %13.2f  %8.2f\n", k, rep.mean_ensemble(k, true), rep.mean_ensemble(k, false));
  out += "\n## word accuracy (%) by coding scheme and decoder (single recognizer)\n";
  out += "scheme     bestpath  words-concise  words-large\n";
  const char* names[] = {"plain", "extrasep"};
  for (std::size_t s = 0; s < 2; ++s)
    put("%-9s  %8.2f  %13.2f  %11.2f\n", names[s], rep.mean_grid(s, DecoderKind::best_path),
        rep.mean_grid(s, DecoderKind::words_concise), rep.mean_grid(s, DecoderKind::words_large));
  out += "\n## per trial\n";
  for (std::size_t i = 0; i < rep.trials.size(); ++i) {
    const auto& t = rep.trials[i];
    put("trial %zu seed %llu\n", i, static_cast<unsigned long long>(t.seed));
    out += "  member_accuracy";
    for (double a : t.member_accuracy) put(" %.2f", a);
    out += "\n  ensemble_words";
    for (double a : t.ensemble_words) put(" %.2f", a);
    out += "\n  ensemble_bestpath";
    for (double a : t.ensemble_bestpath) put(" %.2f", a);
    out += "\n";
    for (std::size_t s = 0; s < 2; ++s)
      put("  %s %.2f %.2f %.2f\n", names[s], t.grid[s][0], t.grid[s][1], t.grid[s][2]);
  }
  return out;
}

}  // namespace lexctc
