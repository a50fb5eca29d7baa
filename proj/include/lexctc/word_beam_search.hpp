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

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexctc/ctc.hpp"
#include "lexctc/error.hpp"
#include "lexctc/language_model.hpp"
#include "lexctc/prefix_tree.hpp"
#include "lexctc/random.hpp"

namespace lexctc {

enum class BeamState { nonword, word };

/// One decoding hypothesis.
struct Beam {
  Labeling text;
  double p_blank = 0.0;     // mass of paths ending in blank
  double p_nonblank = 0.0;  // mass of paths ending in the last character
  double p_text = 1.0;      // LM score, Ptxt
  double p_words = 1.0;     // LM score of the words already closed off
  std::size_t word_start = 0;                  // text.substr(word_start) is the word prefix
  PrefixTree::NodeId node = PrefixTree::kRoot;  // trie node of the word prefix
  bool completed = false;   // text was extended by complete_beams

  double p_total() const { return p_blank + p_nonblank; }
  double score() const { return p_text * p_total(); }
  BeamState state() const { return word_start < text.size() ? BeamState::word : BeamState::nonword; }
  std::u32string_view word_prefix() const { return std::u32string_view(text).substr(word_start); }
};

/// Beams keyed by their text; equal texts share one entry.
using BeamSet = std::unordered_map<Labeling, Beam>;

/// Ranking used everywhere beams are ordered: higher Ptxt*Ptot first, ties
/// broken by ascending text.
inline bool ranks_before(const Beam& a, const Beam& b) {
  const double sa = a.score(), sb = b.score();
  if (sa != sb) return sa > sb;
  return a.text < b.text;
}

/// The `width` best beams of a set, in rank order.
inline std::vector<Beam> best_beams(const BeamSet& beams, std::size_t width) {
  std::vector<const Beam*> ptrs;
  ptrs.reserve(beams.size());
  for (const auto& [text, beam] : beams) ptrs.push_back(&beam);
  const std::size_t keep = std::min(width, ptrs.size());
  std::partial_sort(ptrs.begin(), ptrs.begin() + static_cast<std::ptrdiff_t>(keep), ptrs.end(),
                    [](const Beam* a, const Beam* b) { return ranks_before(*a, *b); });
  std::vector<Beam> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(*ptrs[i]);
  return out;
}

/// Extends every beam that stops inside a word by the remainder of its most
/// probable completion (LM word probability; lexicographic among equals, and
/// in Words mode all completions are equal). Probabilities are not touched.
/// A completed text that collides with an existing beam is dropped rather
/// than merged, so no completion ever adds mass to a real hypothesis.
inline BeamSet complete_beams(const BeamSet& beams, const PrefixTree& tree, const NgramModel* lm,
                              const ScoringMode& mode) {
  BeamSet out;
  std::vector<Beam> extended;
  for (const auto& [text, beam] : beams) {
    if (beam.state() == BeamState::nonword || tree.is_terminal(beam.node)) {
      out.emplace(text, beam);
      continue;
    }
    const auto options = tree.completions(beam.word_prefix());
    if (options.empty()) continue;  // unreachable: word prefixes are always live
    const Completion* best = &options.front();
    if (mode.uses_lm() && lm != nullptr) {
      double best_p = lm->word_probability(best->word);
      for (const auto& c : options) {
        const double p = lm->word_probability(c.word);
        if (p > best_p) {  // strict: earlier (lexicographically smaller) wins ties
          best_p = p;
          best = &c;
        }
      }
    }
    Beam b = beam;
    b.text += best->remainder;
    b.node = *tree.find(best->word);
    b.completed = true;
    extended.push_back(std::move(b));
  }
  for (auto& b : extended) {
    auto it = out.find(b.text);
    if (it == out.end()) {
      out.emplace(b.text, std::move(b));
    } else if (it->second.completed && ranks_before(b, it->second)) {
      it->second = std::move(b);
    }
  }
  return out;
}

/// Dual-state word-beam search over a CTC posterior matrix.
///
/// Beams alternate between a non-word state, extended by non-word characters
/// or by the first character of any dictionary word, and a word state, where
/// the prefix tree dictates the legal continuations. A word may be followed
/// by a non-word character only once it is complete.
///
/// Two optional grammar restrictions, both off by default:
///  - `max_words` (0 = unlimited) caps how many words a beam may contain; a
///    beam that has used up its words only accepts non-word characters.
///  - `terminator`, a non-word character (the extra separator) that may only
///    directly follow a complete word and after which the beam accepts
///    nothing more.
struct GrammarOptions {
  std::size_t max_words = 0;
  std::optional<char32_t> terminator;

  /// Single-word recognition: one word, optionally closed by `separator`.
  static GrammarOptions single_word(std::optional<char32_t> separator = std::nullopt) {
    return {1, separator};
  }
};

class WordBeamSearch {
 public:
  WordBeamSearch(const Alphabet& alphabet, const PrefixTree& tree, const NgramModel* lm,
                 std::size_t width, ScoringMode mode = ScoringMode::words(),
                 GrammarOptions grammar = {})
      : alphabet_(&alphabet),
        tree_(&tree),
        lm_(lm),
        width_(width),
        mode_(mode),
        max_words_(grammar.max_words) {
    if (width_ < 1) throw InputError("beam width must be at least 1");
    if (mode_.kind == ScoringKind::ngrams_forecast_sample && mode_.sample_size < 1)
      throw InputError("forecast sample size must be at least 1");
    if (mode_.uses_lm() && lm_ == nullptr)
      throw ConfigError(std::string("scoring mode '") + std::string(to_string(mode_.kind)) +
                        "' needs a language model");
    for (char32_t c : tree.nonword_chars())
      if (auto idx = alphabet.index_of(c)) nonword_.push_back(static_cast<std::uint32_t>(*idx));
    if (grammar.terminator) {
      if (!tree.nonword_chars().contains(*grammar.terminator))
        throw ConfigError("terminator U+" + codepoint_hex(*grammar.terminator) +
                          " must be a non-word character");
      if (auto idx = alphabet.index_of(*grammar.terminator))
        terminator_ = static_cast<std::uint32_t>(*idx);
    }
    if (tree.empty() && nonword_.empty())
      throw ConfigError("empty dictionary and no non-word characters: no beam can ever extend");
    for (std::size_t i = 0; i < alphabet.label_count(); ++i) {
      const char32_t c = alphabet.symbol(i);
      if (c < kDirectColumns) {
        if (direct_column_.size() <= c) direct_column_.resize(c + 1, -1);
        direct_column_[c] = static_cast<std::int32_t>(i);
      } else {
        far_column_.emplace(c, static_cast<std::int32_t>(i));
      }
    }
  }

  std::size_t width() const noexcept { return width_; }
  const ScoringMode& mode() const noexcept { return mode_; }
  std::size_t max_words() const noexcept { return max_words_; }
  bool has_terminator() const noexcept { return terminator_ != kNoColumn; }

  /// Incremental interface: start, feed frames, then finish.
  void start(Rng* rng = nullptr) {
    labels_.assign(1, LabelNode{kNoLabel, kNoColumn, 0});
    label_child_.clear();
    slot_.assign(1, -1);
    forecast_cache_.clear();
    rng_ = rng;
    owned_rng_.reset();
    if (mode_.kind == ScoringKind::ngrams_forecast_sample && rng_ == nullptr) {
      owned_rng_.emplace(mode_.seed);
      rng_ = &*owned_rng_;
    }
    current_.clear();
    Hyp empty;
    empty.p_blank = 1.0;
    current_.push_back(empty);
    frames_ = 0;
  }

  void advance(std::span<const double> frame) {
    if (frame.size() != alphabet_->size())
      throw InputError("frame has " + std::to_string(frame.size()) + " columns, expected " +
                       std::to_string(alphabet_->size()));
    prune();
    const double p_blank_frame = frame[alphabet_->blank_index()];
    next_.clear();
    if (slot_.size() < labels_.size()) slot_.resize(labels_.size(), -1);

    for (const Hyp& x : current_) {
      const double x_total = x.p_blank + x.p_nonblank;
      const std::uint32_t last = labels_[x.label].column;

      // Copy: the labeling stays the same.
      {
        Hyp& y = next_[slot_for(x.label, [&](Hyp& h) { h = x; })];
        if (last != kNoColumn) y.p_nonblank += x.p_nonblank * frame[last];
        y.p_blank += x_total * p_blank_frame;
      }

      auto extend = [&](std::uint32_t col, auto&& init) {
        const double base = col == last ? x.p_blank : x_total;
        const std::uint32_t id = child_label(x.label, col);
        Hyp& y = next_[slot_for(id, [&](Hyp& h) {
          h.label = id;
          init(h);
        })];
        y.p_nonblank += frame[col] * base;
      };

      if (last != kNoColumn && last == terminator_) continue;
      const bool in_word = x.word_start < labels_[x.label].depth;
      const bool may_start_word = max_words_ == 0 || x.words < max_words_;
      if (in_word || may_start_word) {
        const PrefixTree::NodeId from = in_word ? x.node : PrefixTree::kRoot;
        for (const auto& [c, kid] : tree_->children(from)) {
          const std::int32_t col = column_of(c);
          if (col < 0) continue;
          const PrefixTree::NodeId node = kid;
          extend(static_cast<std::uint32_t>(col), [&](Hyp& y) {
            y.node = node;
            y.word_start = in_word ? x.word_start : labels_[x.label].depth;
            y.words = in_word ? x.words : x.words + 1;
            y.p_words = x.p_words;
            y.p_text = mode_.forecasts() ? x.p_words * forecast(y) : x.p_words;
          });
        }
      }
      if (!in_word || tree_->is_terminal(x.node)) {
        for (std::uint32_t col : nonword_) {
          if (col == terminator_ && !in_word) continue;
          extend(col, [&](Hyp& y) {
            y.node = PrefixTree::kRoot;
            y.word_start = labels_[x.label].depth + 1;
            y.words = x.words;
            y.p_words = (in_word && mode_.uses_lm()) ? x.p_words * close_word(x) : x.p_words;
            y.p_text = y.p_words;
          });
        }
      }
    }
    for (const Hyp& h : next_) slot_[h.label] = -1;
    std::swap(current_, next_);
    ++frames_;
  }

  std::size_t frames_consumed() const noexcept { return frames_; }

  /// Current beams (after the most recent frame), keyed by text.
  BeamSet beams() const {
    BeamSet out;
    for (const Hyp& h : current_) {
      Beam b = to_beam(h);
      out.emplace(b.text, std::move(b));
    }
    return out;
  }

  /// Scores trailing complete words, completes unfinished ones and returns
  /// all final beams in rank order. Beams that needed completion rank after
  /// every beam that did not.
  std::vector<Beam> finish() {
    if (mode_.uses_lm()) {
      for (Hyp& h : current_)
        if (h.word_start < labels_[h.label].depth && tree_->is_terminal(h.node))
          h.p_text = h.p_words * close_word(h);
    }
    const BeamSet done = complete_beams(beams(), *tree_, lm_, mode_);
    std::vector<Beam> ranked;
    ranked.reserve(done.size());
    for (const auto& [text, beam] : done) ranked.push_back(beam);
    std::sort(ranked.begin(), ranked.end(), [](const Beam& a, const Beam& b) {
      if (a.completed != b.completed) return !a.completed;
      return ranks_before(a, b);
    });
    return ranked;
  }

  /// Most probable labeling and its Ptxt*Ptot.
  Decoded decode(const PosteriorMatrix& m, Rng* rng = nullptr) {
    return decode_nbest(m, 1, rng).front();
  }

  /// Up to `n` best labelings in rank order.
  std::vector<Decoded> decode_nbest(const PosteriorMatrix& m, std::size_t n, Rng* rng = nullptr) {
    check_compatible(m, *alphabet_);
    start(rng);
    for (std::size_t t = 0; t < m.frames(); ++t) advance(m.row(t));
    auto ranked = finish();
    std::vector<Decoded> out;
    for (std::size_t i = 0; i < ranked.size() && i < n; ++i)
      out.push_back({std::move(ranked[i].text), ranked[i].score()});
    return out;
  }

 private:
  static constexpr std::uint32_t kNoLabel = UINT32_MAX;
  static constexpr std::uint32_t kNoColumn = UINT32_MAX;
  static constexpr char32_t kDirectColumns = 0x3000;

  // Labelings are interned as a tree of (parent, column) so beams carry ids
  // instead of strings.
  struct LabelNode {
    std::uint32_t parent;
    std::uint32_t column;
    std::uint32_t depth;
  };

  struct Hyp {
    std::uint32_t label = 0;
    double p_blank = 0.0;
    double p_nonblank = 0.0;
    double p_text = 1.0;
    double p_words = 1.0;
    std::uint32_t word_start = 0;
    PrefixTree::NodeId node = PrefixTree::kRoot;
    std::uint32_t words = 0;
  };

  std::int32_t column_of(char32_t c) const {
    if (c < kDirectColumns) return c < direct_column_.size() ? direct_column_[c] : -1;
    auto it = far_column_.find(c);
    return it == far_column_.end() ? -1 : it->second;
  }

  std::uint32_t child_label(std::uint32_t parent, std::uint32_t column) {
    const std::uint64_t key = (static_cast<std::uint64_t>(parent) << 32) | column;
    auto [it, fresh] = label_child_.try_emplace(key, static_cast<std::uint32_t>(labels_.size()));
    if (fresh) {
      labels_.push_back({parent, column, labels_[parent].depth + 1});
      slot_.push_back(-1);
    }
    return it->second;
  }

  template <class Init>
  std::size_t slot_for(std::uint32_t label, Init&& init) {
    if (slot_[label] >= 0) return static_cast<std::size_t>(slot_[label]);
    Hyp h;
    init(h);
    h.label = label;
    h.p_blank = h.p_nonblank = 0.0;
    slot_[label] = static_cast<std::int32_t>(next_.size());
    next_.push_back(h);
    return next_.size() - 1;
  }

  Labeling text_of(std::uint32_t label) const {
    Labeling s(labels_[label].depth, U'\0');
    for (std::uint32_t id = label; id != 0; id = labels_[id].parent)
      s[labels_[id].depth - 1] = alphabet_->symbol(labels_[id].column);
    return s;
  }

  bool better(const Hyp& a, const Hyp& b) const {
    const double sa = a.p_text * (a.p_blank + a.p_nonblank);
    const double sb = b.p_text * (b.p_blank + b.p_nonblank);
    if (sa != sb) return sa > sb;
    return text_of(a.label) < text_of(b.label);
  }

  void prune() {
    if (current_.size() <= width_) return;
    auto cmp = [this](const Hyp& a, const Hyp& b) { return better(a, b); };
    std::nth_element(current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(width_ - 1),
                     current_.end(), cmp);
    current_.resize(width_);
  }

  Beam to_beam(const Hyp& h) const {
    Beam b;
    b.text = text_of(h.label);
    b.p_blank = h.p_blank;
    b.p_nonblank = h.p_nonblank;
    b.p_text = h.p_text;
    b.p_words = h.p_words;
    b.word_start = std::min<std::size_t>(h.word_start, b.text.size());
    b.node = h.node;
    return b;
  }

  std::u32string word_of(const Hyp& h) const { return text_of(h.label).substr(h.word_start); }

  double close_word(const Hyp& h) const { return lm_->word_probability(word_of(h)); }

  double forecast(const Hyp& h) {
    auto it = forecast_cache_.find(h.node);
    if (it != forecast_cache_.end()) return it->second;
    std::optional<std::size_t> sample;
    if (mode_.kind == ScoringKind::ngrams_forecast_sample) sample = mode_.sample_size;
    const double f = forecast_from_node(*lm_, *tree_, word_of(h), h.node, sample, rng_);
    forecast_cache_.emplace(h.node, f);
    return f;
  }

  const Alphabet* alphabet_;
  const PrefixTree* tree_;
  const NgramModel* lm_;
  std::size_t width_;
  ScoringMode mode_;
  std::size_t max_words_;
  std::uint32_t terminator_ = kNoColumn;
  std::vector<std::uint32_t> nonword_;
  std::vector<std::int32_t> direct_column_;
  std::unordered_map<char32_t, std::int32_t> far_column_;

  std::vector<LabelNode> labels_;
  std::unordered_map<std::uint64_t, std::uint32_t> label_child_;
  std::vector<Hyp> current_, next_;
  std::vector<std::int32_t> slot_;
  std::unordered_map<PrefixTree::NodeId, double> forecast_cache_;
  Rng* rng_ = nullptr;
  std::optional<Rng> owned_rng_;
  std::size_t frames_ = 0;
};

/// One-shot convenience wrapper around WordBeamSearch.
inline Decoded word_beam_search(const PosteriorMatrix& m, const Alphabet& alphabet,
                                const PrefixTree& tree, const NgramModel* lm, std::size_t width,
                                ScoringMode mode = ScoringMode::words(), Rng* rng = nullptr) {
  WordBeamSearch search(alphabet, tree, lm, width, mode);
  return search.decode(m, rng);
}

}  // namespace lexctc
