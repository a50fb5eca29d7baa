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


// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond plain data types.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lexctc/ctc.hpp"

namespace lexctc::testing {

/// Random row-stochastic matrix; rows are normalized exponential draws.
inline PosteriorMatrix random_matrix(std::mt19937_64& rng, std::size_t frames, std::size_t columns) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> data;
  for (std::size_t t = 0; t < frames; ++t) {
    std::vector<double> row(columns);
    double sum = 0.0;
    for (auto& v : row) sum += v = e(rng);
    for (auto& v : row) data.push_back(v / sum);
  }
  return PosteriorMatrix(frames, columns, std::move(data));
}

/// Collapses a path given as symbols, with `blank` standing for the blank.
inline std::u32string naive_collapse(const std::vector<char32_t>& path, char32_t blank) {
  std::u32string out;
  char32_t prev = blank;
  for (char32_t c : path) {
    if (c != blank && c != prev) out += c;
    prev = c;
  }
  return out;
}

/// Enumerates all C^T paths and sums their probabilities per labeling.
/// `labels` lists the non-blank columns in order; the blank is last.
inline std::map<std::u32string, double> brute_distribution(const PosteriorMatrix& m,
                                                           const std::u32string& labels) {
  const char32_t blank = 0x10FFFF;  // never a label in these tests
  const std::size_t T = m.frames(), C = m.columns();
  std::map<std::u32string, double> dist;
  std::vector<std::size_t> idx(T, 0);
  while (true) {
    double p = 1.0;
    std::vector<char32_t> path(T);
    for (std::size_t t = 0; t < T; ++t) {
      p *= m(t, idx[t]);
      path[t] = idx[t] == C - 1 ? blank : labels[idx[t]];
    }
    dist[naive_collapse(path, blank)] += p;
    std::size_t t = 0;
    while (t < T && ++idx[t] == C) idx[t++] = 0;
    if (t == T) break;
  }
  return dist;
}

/// A labeling is valid when each maximal run of word characters is a
/// dictionary word (runs are delimited by non-word characters).
inline bool dictionary_valid(const std::u32string& labeling, const std::set<std::u32string>& dict,
                             const std::u32string& nonword) {
  std::u32string run;
  for (char32_t c : labeling) {
    if (nonword.find(c) != std::u32string::npos) {
      if (!run.empty() && !dict.count(run)) return false;
      run.clear();
    } else {
      run += c;
    }
  }
  return run.empty() || dict.count(run) > 0;
}

struct OracleResult {
  std::u32string labeling;
  double probability = -1.0;
  double runner_up = -1.0;
};

/// Most probable dictionary-valid labeling by exhaustive enumeration.
inline OracleResult constrained_argmax(const PosteriorMatrix& m, const std::u32string& labels,
                                       const std::set<std::u32string>& dict,
                                       const std::u32string& nonword) {
  OracleResult r;
  for (const auto& [l, p] : brute_distribution(m, labels)) {
    if (!dictionary_valid(l, dict, nonword)) continue;
    if (p > r.probability) {
      r.runner_up = r.probability;
      r.probability = p;
      r.labeling = l;
    } else if (p > r.runner_up) {
      r.runner_up = p;
    }
  }
  return r;
}

/// Random word over `chars` with length in [1, max_len].
inline std::u32string random_word(std::mt19937_64& rng, const std::u32string& chars,
                                  std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len), pick(0, chars.size() - 1);
  std::u32string w;
  for (std::size_t i = len(rng); i > 0; --i) w += chars[pick(rng)];
  return w;
}

}  // namespace lexctc::testing
