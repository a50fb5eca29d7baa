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
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "lexctc/error.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// Comparison key for evaluation: NFC so that accented letters count as a
/// single unit whatever their encoding, optionally lowercased.
inline std::u32string eval_key(std::string_view s, bool case_insensitive) {
  auto key = nfc(utf8_to_u32(s));
  return case_insensitive ? nfc(to_lower(key)) : key;
}

/// Minimal insert/delete/substitute count.
inline std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// UTF-8 overload; both sides are NFC-normalized first.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(eval_key(a, false), eval_key(b, false));
}

namespace detail {

inline void check_aligned(std::size_t preds, std::size_t gts) {
  if (preds != gts)
    throw InputError("prediction count " + std::to_string(preds) +
                     " does not match ground-truth count " + std::to_string(gts));
}

}  // namespace detail

/// Percentage of exact matches. Accents always count; case only when
/// `case_insensitive` is false.
inline double word_accuracy(std::span<const std::string> preds, std::span<const std::string> gts,
                            bool case_insensitive) {
  detail::check_aligned(preds.size(), gts.size());
  if (gts.empty()) throw InputError("word accuracy of an empty set is undefined");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gts.size(); ++i)
    hits += eval_key(preds[i], case_insensitive) == eval_key(gts[i], case_insensitive);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(gts.size());
}

struct VocabularySplit {
  std::vector<std::size_t> inv;  // test indices whose word is in the training vocabulary
  std::vector<std::size_t> oov;
};

inline VocabularySplit oov_split(std::span<const std::string> train_vocab,
                                 std::span<const std::string> test_words, bool case_insensitive) {
  std::set<std::u32string> vocab;
  for (const auto& w : train_vocab) vocab.insert(eval_key(w, case_insensitive));
  VocabularySplit split;
  for (std::size_t i = 0; i < test_words.size(); ++i)
    (vocab.count(eval_key(test_words[i], case_insensitive)) ? split.inv : split.oov).push_back(i);
  return split;
}

struct Bucket {
  std::size_t count = 0;
  std::size_t correct = 0;
  double accuracy() const {
    return count == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(count);
  }
};

/// Accuracy grouped by ground-truth length in scalar values (after NFC).
inline std::map<std::size_t, Bucket> length_breakdown(std::span<const std::string> preds,
                                                      std::span<const std::string> gts,
                                                      bool case_insensitive = false) {
  detail::check_aligned(preds.size(), gts.size());
  std::map<std::size_t, Bucket> out;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    const auto gt = eval_key(gts[i], case_insensitive);
    auto& b = out[gt.size()];
    ++b.count;
    b.correct += gt == eval_key(preds[i], case_insensitive);
  }
  return out;
}

struct Confusion {
  std::string gt;
  std::string pred;
  std::size_t distance = 0;
};

/// Per ground-truth class: how often it occurs in the test set and how often
/// it was recognized.
struct ClassFrequency {
  std::string word;
  std::size_t frequency = 0;
  double accuracy = 0.0;
  std::optional<bool> in_vocabulary;
};

struct EvalReport {
  std::size_t samples = 0;
  bool case_insensitive = false;
  double word_accuracy = 0.0;
  double mean_edit_distance = 0.0;
  std::map<std::size_t, Bucket> per_length;
  std::optional<Bucket> inv;
  std::optional<Bucket> oov;
  std::vector<Confusion> confusions;
  std::vector<ClassFrequency> classes;  // ascending frequency, then word
};

inline EvalReport evaluate(std::span<const std::string> preds, std::span<const std::string> gts,
                           bool case_insensitive,
                           std::optional<std::span<const std::string>> train_vocab = std::nullopt,
                           std::size_t max_confusions = 50) {
  detail::check_aligned(preds.size(), gts.size());
  if (gts.empty()) throw InputError("cannot evaluate an empty test set");
  EvalReport r;
  r.samples = gts.size();
  r.case_insensitive = case_insensitive;
  r.word_accuracy = word_accuracy(preds, gts, case_insensitive);
  r.per_length = length_breakdown(preds, gts, case_insensitive);

  std::set<std::u32string> vocab;
  if (train_vocab) {
    r.inv.emplace();
    r.oov.emplace();
    for (const auto& w : *train_vocab) vocab.insert(eval_key(w, case_insensitive));
  }

  std::map<std::u32string, Bucket> by_class;
  std::size_t total_distance = 0;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    const auto gt = eval_key(gts[i], case_insensitive);
    const auto pred = eval_key(preds[i], case_insensitive);
    const bool hit = gt == pred;
    const std::size_t d = hit ? 0 : levenshtein(gt, pred);
    total_distance += d;
    auto& cls = by_class[gt];
    ++cls.count;
    cls.correct += hit;
    if (train_vocab) {
      auto& b = vocab.count(gt) ? *r.inv : *r.oov;
      ++b.count;
      b.correct += hit;
    }
    if (!hit && r.confusions.size() < max_confusions) r.confusions.push_back({gts[i], preds[i], d});
  }
  r.mean_edit_distance = static_cast<double>(total_distance) / static_cast<double>(gts.size());

  for (const auto& [gt, b] : by_class) {
    ClassFrequency c{u32_to_utf8(gt), b.count, b.accuracy(), std::nullopt};
    if (train_vocab) c.in_vocabulary = vocab.count(gt) != 0;
    r.classes.push_back(std::move(c));
  }
  std::stable_sort(r.classes.begin(), r.classes.end(),
                   [](const ClassFrequency& a, const ClassFrequency& b) {
                     return a.frequency < b.frequency;
                   });
  return r;
}

namespace detail {

inline std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// Human-readable table.
inline std::string format_table(const EvalReport& r) {
  std::string out;
  auto line = [&](const std::string& s) { out += s + "\n"; };
  line("samples            " + std::to_string(r.samples));
  line(std::string("case               ") + (r.case_insensitive ? "insensitive" : "sensitive"));
  line("word accuracy (%)  " + detail::fixed(r.word_accuracy, 2));
  line("mean edit distance " + detail::fixed(r.mean_edit_distance, 4));
  auto bucket = [](const Bucket& b) {
    return (b.count == 0 ? std::string("n/a") : detail::fixed(b.accuracy(), 2)) + "  (n=" +
           std::to_string(b.count) + ")";
  };
  if (r.inv) line("INV accuracy (%)   " + bucket(*r.inv));
  if (r.oov) line("OOV accuracy (%)   " + bucket(*r.oov));
  line("");
  line("length  count  accuracy(%)");
  for (const auto& [len, b] : r.per_length) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%6zu %6zu %12.2f", len, b.count, b.accuracy());
    line(buf);
  }
  if (!r.confusions.empty()) {
    line("");
    line("ground truth\tprediction\tdistance");
    for (const auto& c : r.confusions)
      line(c.gt + "\t" + c.pred + "\t" + std::to_string(c.distance));
  }
  return out;
}

/// Machine-readable form: one `key value` pair per line.
inline std::string format_kv(const EvalReport& r) {
  std::string out;
  auto kv = [&](const std::string& k, const std::string& v) { out += k + " " + v + "\n"; };
  kv("samples", std::to_string(r.samples));
  kv("case_insensitive", r.case_insensitive ? "1" : "0");
  kv("word_accuracy", detail::fixed(r.word_accuracy));
  kv("mean_edit_distance", detail::fixed(r.mean_edit_distance));
  if (r.inv) {
    kv("inv_count", std::to_string(r.inv->count));
    kv("inv_accuracy", detail::fixed(r.inv->accuracy()));
  }
  if (r.oov) {
    kv("oov_count", std::to_string(r.oov->count));
    kv("oov_accuracy", detail::fixed(r.oov->accuracy()));
  }
  for (const auto& [len, b] : r.per_length) {
    kv("length." + std::to_string(len) + ".count", std::to_string(b.count));
    kv("length." + std::to_string(len) + ".accuracy", detail::fixed(b.accuracy()));
  }
  for (std::size_t i = 0; i < r.classes.size(); ++i) {
    const auto& c = r.classes[i];
    std::string v = std::to_string(c.frequency) + " " + detail::fixed(c.accuracy);
    if (c.in_vocabulary) v += *c.in_vocabulary ? " inv" : " oov";
    kv("class." + c.word, v);
  }
  return out;
}

}  // namespace lexctc
