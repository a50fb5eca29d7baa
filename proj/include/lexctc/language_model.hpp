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

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexctc/error.hpp"
#include "lexctc/prefix_tree.hpp"
#include "lexctc/random.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// Sentinel marking word start (as padding) and word end (as a prediction).
inline constexpr char32_t kWordBoundary = U'\0';

enum class ScoringKind { words, ngrams, ngrams_forecast, ngrams_forecast_sample };

/// How the decoder assigns the text score Ptxt to beams.
struct ScoringMode {
  ScoringKind kind = ScoringKind::words;
  std::size_t sample_size = 20;  // forecast-sample only
  std::uint64_t seed = 0;        // forecast-sample only

  static ScoringMode words() { return {}; }
  static ScoringMode ngrams() { return {ScoringKind::ngrams}; }
  static ScoringMode ngrams_forecast() { return {ScoringKind::ngrams_forecast}; }
  static ScoringMode ngrams_forecast_sample(std::size_t sample_size, std::uint64_t seed) {
    if (sample_size < 1) throw InputError("forecast sample size must be at least 1");
    return {ScoringKind::ngrams_forecast_sample, sample_size, seed};
  }

  bool uses_lm() const { return kind != ScoringKind::words; }
  bool forecasts() const {
    return kind == ScoringKind::ngrams_forecast || kind == ScoringKind::ngrams_forecast_sample;
  }
};

inline std::string_view to_string(ScoringKind k) {
  switch (k) {
    case ScoringKind::words: return "words";
    case ScoringKind::ngrams: return "ngrams";
    case ScoringKind::ngrams_forecast: return "ngrams-forecast";
    case ScoringKind::ngrams_forecast_sample: return "ngrams-forecast-sample";
  }
  return "?";
}

inline std::optional<ScoringKind> parse_scoring_kind(std::string_view s) {
  for (auto k : {ScoringKind::words, ScoringKind::ngrams, ScoringKind::ngrams_forecast,
                 ScoringKind::ngrams_forecast_sample})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Character n-gram model with add-k smoothing, trained on isolated words.
///
/// Each word is padded with N-1 boundary symbols in front and one behind, so
/// the model predicts both the first characters and the end of a word.
class NgramModel {
 public:
  /// `extra_vocabulary` adds characters the corpus may not contain (e.g. the
  /// rest of a decoder alphabet) so they still receive smoothed mass.
  static NgramModel train(const std::vector<std::u32string>& corpus, std::size_t order,
                          double smoothing_k = 1.0, std::u32string_view extra_vocabulary = {}) {
    if (corpus.empty()) throw InputError("cannot train a language model on an empty corpus");
    if (order < 1) throw InputError("n-gram order must be at least 1");
    if (!(smoothing_k > 0.0)) throw InputError("smoothing constant must be positive");
    NgramModel lm;
    lm.order_ = order;
    lm.k_ = smoothing_k;
    std::u32string vocab(extra_vocabulary);
    vocab.push_back(kWordBoundary);
    for (const auto& w : corpus) {
      for (char32_t c : w) {
        if (c == kWordBoundary) throw InputError("corpus word contains the boundary sentinel");
        vocab.push_back(c);
      }
      std::u32string padded(order - 1, kWordBoundary);
      padded += w;
      padded.push_back(kWordBoundary);
      for (std::size_t i = order - 1; i < padded.size(); ++i) {
        auto& ctx = lm.counts_[padded.substr(i - (order - 1), order - 1)];
        ++ctx.next[padded[i]];
        ++ctx.total;
      }
    }
    lm.vocabulary_ = CharSet(std::move(vocab));
    return lm;
  }

  std::size_t order() const noexcept { return order_; }
  double smoothing_k() const noexcept { return k_; }
  /// Word characters plus the boundary sentinel.
  const CharSet& vocabulary() const noexcept { return vocabulary_; }
  std::size_t context_count() const noexcept { return counts_.size(); }

  /// Smoothed P(c | context) for a context of exactly N-1 symbols.
  double conditional(std::u32string_view context, char32_t c) const {
    if (!vocabulary_.contains(c))
      throw InputError("U+" + codepoint_hex(c) + " is outside the language model vocabulary");
    const double v = static_cast<double>(vocabulary_.size());
    auto it = counts_.find(std::u32string(context));
    if (it == counts_.end()) return 1.0 / v;
    const auto& ctx = it->second;
    auto nit = ctx.next.find(c);
    const double n = nit == ctx.next.end() ? 0.0 : static_cast<double>(nit->second);
    return (n + k_) / (static_cast<double>(ctx.total) + k_ * v);
  }

  /// The N-1 symbol context following a partial word (boundary-padded).
  std::u32string context_of(std::u32string_view word_prefix) const {
    const std::size_t need = order_ - 1;
    std::u32string ctx;
    if (word_prefix.size() < need) ctx.assign(need - word_prefix.size(), kWordBoundary);
    ctx += word_prefix.substr(word_prefix.size() > need ? word_prefix.size() - need : 0);
    return ctx;
  }

  /// P(c | current partial word). `c` may be kWordBoundary (end of word).
  double next_probability(std::u32string_view word_prefix, char32_t c) const {
    return conditional(context_of(word_prefix), c);
  }

  /// Probability of a whole word including its end-of-word event.
  double word_probability(std::u32string_view word) const {
    double p = 1.0;
    for (std::size_t i = 0; i < word.size(); ++i) p *= next_probability(word.substr(0, i), word[i]);
    return p * next_probability(word, kWordBoundary);
  }

 private:
  struct ContextCounts {
    std::unordered_map<char32_t, std::uint64_t> next;
    std::uint64_t total = 0;
  };

  std::size_t order_ = 1;
  double k_ = 1.0;
  CharSet vocabulary_;
  std::unordered_map<std::u32string, ContextCounts> counts_;
};

/// Trailing run of characters from `chars` at the end of `text`.
inline std::u32string_view trailing_word(std::u32string_view text, const CharSet& chars) {
  std::size_t start = text.size();
  while (start > 0 && chars.contains(text[start - 1])) --start;
  return text.substr(start);
}

/// Probability of extending `beam_text` by `c`, conditioned on the current
/// partial word (the trailing run of LM vocabulary characters).
inline double score_extension(const NgramModel& lm, std::u32string_view beam_text, char32_t c) {
  return lm.next_probability(trailing_word(beam_text, lm.vocabulary()), c);
}

/// Summed word probability over completions reachable from a trie node.
/// With `sample_size` set and smaller than the completion count, a uniform
/// sample without replacement is summed and scaled by total/sampled, which
/// keeps the estimate unbiased.
inline double forecast_from_node(const NgramModel& lm, const PrefixTree& tree,
                                 std::u32string_view prefix, PrefixTree::NodeId node,
                                 std::optional<std::size_t> sample_size, Rng* rng) {
  std::vector<std::u32string> remainders;
  remainders.reserve(tree.completion_count(node));
  for (auto& c : tree.completions(prefix)) remainders.push_back(std::move(c.remainder));
  const std::size_t n = remainders.size();
  if (n == 0) return 0.0;

  std::u32string word(prefix);
  auto word_prob = [&](const std::u32string& rest) {
    word.resize(prefix.size());
    word += rest;
    return lm.word_probability(word);
  };

  if (!sample_size || *sample_size >= n) {
    double sum = 0.0;
    for (const auto& r : remainders) sum += word_prob(r);
    return sum;
  }
  if (rng == nullptr) throw InputError("forecast sampling needs a random generator");
  // Partial Fisher-Yates: the first k slots become the sample.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const std::size_t k = *sample_size;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(*rng, n - i));
    std::swap(idx[i], idx[j]);
    sum += word_prob(remainders[idx[i]]);
  }
  return sum * static_cast<double>(n) / static_cast<double>(k);
}

/// Forecast score of the current word prefix of `beam_text` under a forecast
/// mode. Returns 0 for a dead prefix. For the other modes the score is the
/// exact forecast.
inline double score_forecast(const NgramModel& lm, const PrefixTree& tree,
                             std::u32string_view beam_text, const ScoringMode& mode,
                             Rng* rng = nullptr) {
  const auto prefix = trailing_word(beam_text, tree.word_chars());
  auto node = tree.find(prefix);
  if (!node) return 0.0;
  std::optional<std::size_t> sample;
  if (mode.kind == ScoringKind::ngrams_forecast_sample) sample = mode.sample_size;
  return forecast_from_node(lm, tree, prefix, *node, sample, rng);
}

}  // namespace lexctc
