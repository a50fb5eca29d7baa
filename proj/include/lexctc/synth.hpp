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
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lexctc/coding_scheme.hpp"
#include "lexctc/ctc.hpp"
#include "lexctc/error.hpp"
#include "lexctc/random.hpp"

namespace lexctc {

/// Stand-in for a trained recognizer: turns a ground-truth word into a noisy
/// posterior matrix.
struct RecognizerSim {
  Alphabet alphabet;                // output layer, already augmented for the scheme
  std::size_t frames_per_char = 4;
  std::size_t blank_frames = 1;     // blank-peaked frames between two characters
  double noise_level = 0.0;         // expected mass taken from the peak
  double confusion_spread = 1.0;    // 0 spreads leaked mass evenly; larger concentrates it
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t word_hash(std::u32string_view word) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a over scalar values
  for (char32_t c : word) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Each row has its own generator; the separator column (if any) draws its
// weight last, so a row looks the same with or without the separator apart
// from that one entry.
inline void push_peaked_row(std::vector<double>& data, const Alphabet& alphabet, std::size_t peak,
                            const RecognizerSim& sim, std::uint64_t row_seed) {
  Rng rng(row_seed);
  const std::size_t columns = alphabet.size();
  const std::size_t start = data.size();
  data.resize(start + columns, 0.0);
  double* row = data.data() + start;
  // u^((1-n)/n) has mean n and support [0, 1] for every n in (0, 1).
  const double n = sim.noise_level;
  const double leak = n <= 0.0 ? 0.0 : n >= 1.0 ? 1.0 : std::pow(uniform01(rng), (1.0 - n) / n);
  if (leak > 0.0) {
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < alphabet.characters().size(); ++c) order.push_back(c);
    order.push_back(alphabet.blank_index());
    if (alphabet.separator()) order.push_back(alphabet.characters().size());
    double total = 0.0;
    for (std::size_t c : order) {
      const double e = -std::log1p(-uniform01(rng));
      if (c == peak) continue;
      row[c] = std::pow(e, 1.0 + sim.confusion_spread);
      total += row[c];
    }
    if (total > 0.0)
      for (std::size_t c = 0; c < columns; ++c)
        if (c != peak) row[c] *= leak / total;
  }
  row[peak] = 1.0 - leak;
  double sum = 0.0;
  for (std::size_t c = 0; c < columns; ++c) sum += row[c];
  for (std::size_t c = 0; c < columns; ++c) row[c] /= sum;
}

}  // namespace detail

/// Posterior matrix for `word` under `scheme`: frames_per_char frames peaked on
/// each label character, blank frames in between. Deterministic in
/// (sim.seed, word); under ExtraSeparator the word frames are identical to
/// the Plain ones and the separator frames follow.
inline PosteriorMatrix emit(const RecognizerSim& sim, std::u32string_view word,
                            const CodingScheme& scheme) {
  if (sim.frames_per_char < 1) throw InputError("frames_per_char must be at least 1");
  if (sim.noise_level < 0.0 || sim.noise_level > 1.0)
    throw InputError("noise level must lie in [0, 1]");
  if (sim.confusion_spread < 0.0) throw InputError("confusion spread must be non-negative");
  const auto label = encode_label(word, scheme);
  if (label.empty()) throw InputError("cannot emit a matrix for an empty label");
  std::vector<std::size_t> cols;
  for (char32_t c : label) {
    auto idx = sim.alphabet.index_of(c);
    if (!idx)
      throw InputError("character U+" + codepoint_hex(c) + " of '" + u32_to_utf8(word) +
                       "' is not in the recognizer alphabet");
    cols.push_back(*idx);
  }
  // Keyed on the bare word so both schemes share the noise on the word frames.
  const std::uint64_t base = derive_seed(sim.seed, detail::word_hash(word));
  const std::size_t columns = sim.alphabet.size();
  const std::size_t frames =
      cols.size() * sim.frames_per_char + (cols.size() - 1) * sim.blank_frames;
  std::vector<double> data;
  data.reserve(frames * columns);
  std::uint64_t row = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0)
      for (std::size_t f = 0; f < sim.blank_frames; ++f)
        detail::push_peaked_row(data, sim.alphabet, sim.alphabet.blank_index(), sim,
                                derive_seed(base, row++));
    for (std::size_t f = 0; f < sim.frames_per_char; ++f)
      detail::push_peaked_row(data, sim.alphabet, cols[i], sim, derive_seed(base, row++));
  }
  return PosteriorMatrix(frames, columns, std::move(data));
}

/// `n` variants of `prototype` with distinct derived seeds and noise levels
/// jittered uniformly within +-jitter (clamped to [0, 1]).
inline std::vector<RecognizerSim> make_ensemble(const RecognizerSim& prototype,
                                                std::uint64_t base_seed, std::size_t n,
                                                double jitter) {
  std::vector<RecognizerSim> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RecognizerSim sim = prototype;
    sim.seed = derive_seed(base_seed, 2 * i);
    Rng rng(derive_seed(base_seed, 2 * i + 1));
    sim.noise_level =
        std::clamp(prototype.noise_level + jitter * (2.0 * uniform01(rng) - 1.0), 0.0, 1.0);
    out.push_back(std::move(sim));
  }
  return out;
}

}  // namespace lexctc
