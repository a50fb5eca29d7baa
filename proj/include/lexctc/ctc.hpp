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

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexctc/error.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// A labeling is a blank-free sequence of alphabet characters.
using Labeling = std::u32string;

/// Ordered character inventory of a CTC output layer.
///
/// Column layout: the characters in order, then the separator (if any), then
/// the blank in the last column.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::u32string characters, std::optional<char32_t> separator = std::nullopt)
      : characters_(std::move(characters)), separator_(separator) {
    for (std::size_t i = 0; i < characters_.size(); ++i) {
      if (!index_.emplace(characters_[i], i).second)
        throw InputError("alphabet character U+" + codepoint_hex(characters_[i]) + " is duplicated");
    }
    if (separator_) {
      if (index_.count(*separator_))
        throw InputError("separator U+" + codepoint_hex(*separator_) + " is also an alphabet character");
      index_.emplace(*separator_, characters_.size());
    }
  }

  const std::u32string& characters() const noexcept { return characters_; }
  const std::optional<char32_t>& separator() const noexcept { return separator_; }

  /// Number of non-blank output columns (characters plus separator).
  std::size_t label_count() const noexcept { return characters_.size() + (separator_ ? 1 : 0); }
  /// Total column count C.
  std::size_t size() const noexcept { return label_count() + 1; }
  std::size_t blank_index() const noexcept { return label_count(); }

  /// Characters in column order, separator included, blank excluded.
  std::u32string labels() const {
    std::u32string s = characters_;
    if (separator_) s.push_back(*separator_);
    return s;
  }

  std::optional<std::size_t> index_of(char32_t c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(char32_t c) const { return index_.count(c) != 0; }

  /// Character for a non-blank column.
  char32_t symbol(std::size_t column) const {
    if (column < characters_.size()) return characters_[column];
    if (separator_ && column == characters_.size()) return *separator_;
    throw InputError("column " + std::to_string(column) + " has no character");
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.characters_ == b.characters_ && a.separator_ == b.separator_;
  }


 private:
  std::u32string characters_;
  std::optional<char32_t> separator_;
  std::unordered_map<char32_t, std::size_t> index_;
};

/// Dense T x C row-stochastic matrix of per-frame output probabilities.
class PosteriorMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-6;

  PosteriorMatrix() = default;

  /// Validating constructor; rows that do not sum to one are rejected.
  PosteriorMatrix(std::size_t frames, std::size_t columns, std::vector<double> data)
      : frames_(frames), columns_(columns), data_(std::move(data)) {
    if (frames_ < 1) throw InputError("posterior matrix needs at least one frame");
    if (columns_ < 2) throw InputError("posterior matrix needs at least two columns");
    if (data_.size() != frames_ * columns_)
      throw InputError("posterior matrix data has " + std::to_string(data_.size()) +
                       " entries, expected " + std::to_string(frames_ * columns_));
    for (std::size_t t = 0; t < frames_; ++t) {
      double sum = 0.0;
      for (double p : row(t)) {
        if (!std::isfinite(p) || p < 0.0)
          throw InputError("frame " + std::to_string(t) + " has a negative or non-finite entry");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kRowSumTolerance)
        throw InputError("frame " + std::to_string(t) + " sums to " + std::to_string(sum));
    }
  }

  static PosteriorMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
      if (r.size() != cols) throw InputError("ragged posterior matrix rows");
      data.insert(data.end(), r.begin(), r.end());
    }
    return PosteriorMatrix(rows.size(), cols, std::move(data));
  }

  std::size_t frames() const noexcept { return frames_; }
  std::size_t columns() const noexcept { return columns_; }

  double operator()(std::size_t t, std::size_t c) const { return data_[t * columns_ + c]; }

  std::span<const double> row(std::size_t t) const {
    return {data_.data() + t * columns_, columns_};
  }

  const std::vector<double>& data() const noexcept { return data_; }

 private:
  std::size_t frames_ = 0;
  std::size_t columns_ = 0;
  std::vector<double> data_;
};

inline void check_compatible(const PosteriorMatrix& m, const Alphabet& alphabet) {
  if (m.columns() != alphabet.size())
    throw InputError("matrix has " + std::to_string(m.columns()) + " columns but alphabet needs " +
                     std::to_string(alphabet.size()));
}

/// CTC many-to-one map: merge adjacent repeats, then drop blanks.
inline Labeling collapse(std::span<const std::size_t> path, const Alphabet& alphabet) {
  const std::size_t blank = alphabet.blank_index();
  Labeling out;
  std::size_t prev = blank;
  for (std::size_t idx : path) {
    if (idx >= alphabet.size())
      throw InputError("path index " + std::to_string(idx) + " out of range");
    if (idx != blank && idx != prev) out.push_back(alphabet.symbol(idx));
    prev = idx;
  }
  return out;
}

struct Decoded {
  Labeling text;
  double likelihood = 0.0;
};

/// Greedy decoding: per-frame argmax (first maximum wins), then collapse.
inline Decoded best_path_decode(const PosteriorMatrix& m, const Alphabet& alphabet) {
  check_compatible(m, alphabet);
  std::vector<std::size_t> path(m.frames());
  double likelihood = 1.0;
  for (std::size_t t = 0; t < m.frames(); ++t) {
    const auto r = m.row(t);
    std::size_t best = 0;
    for (std::size_t c = 1; c < r.size(); ++c)
      if (r[c] > r[best]) best = c;
    path[t] = best;
    likelihood *= r[best];
  }
  return {collapse(path, alphabet), likelihood};
}

/// Upper bound on C^T for the exhaustive path enumerations below.
inline constexpr double kMaxEnumeratedPaths = 1e7;

namespace detail {

inline void check_enumeration_cap(const PosteriorMatrix& m) {
  const double paths = std::pow(static_cast<double>(m.columns()), static_cast<double>(m.frames()));
  if (paths > kMaxEnumeratedPaths)
    throw CapacityError("exhaustive enumeration of " + std::to_string(m.columns()) + "^" +
                        std::to_string(m.frames()) + " paths exceeds the 1e7 cap");
}

// Depth-first walk over paths whose collapse stays a prefix of `target`.
// `emitted` is how many target symbols the path prefix already produced.
inline double sum_consistent_paths(const PosteriorMatrix& m, const Alphabet& alphabet,
                                   const std::vector<std::size_t>& target, std::size_t t,
                                   std::size_t prev, std::size_t emitted) {
  if (t == m.frames()) return emitted == target.size() ? 1.0 : 0.0;
  // Each remaining frame can emit at most one new symbol.
  if (target.size() - emitted > m.frames() - t) return 0.0;
  const std::size_t blank = alphabet.blank_index();
  double total = 0.0;
  for (std::size_t c = 0; c < m.columns(); ++c) {
    const double p = m(t, c);
    if (p == 0.0) continue;
    std::size_t next = emitted;
    if (c != blank && c != prev) {
      if (emitted == target.size() || target[emitted] != c) continue;
      next = emitted + 1;
    }
    total += p * sum_consistent_paths(m, alphabet, target, t + 1, c, next);
  }
  return total;
}

}  // namespace detail

/// Exhaustive probability of a labeling: the sum over every frame path that
/// collapses to `labeling` of the product of its per-frame probabilities.
/// Throws CapacityError when C^T exceeds 1e7.
inline double labeling_probability(const PosteriorMatrix& m, const Labeling& labeling,
                                   const Alphabet& alphabet) {
  check_compatible(m, alphabet);
  detail::check_enumeration_cap(m);
  if (labeling.size() > m.frames()) return 0.0;
  std::vector<std::size_t> target;
  target.reserve(labeling.size());
  for (char32_t c : labeling) {
    auto idx = alphabet.index_of(c);
    if (!idx) return 0.0;
    target.push_back(*idx);
  }
  return detail::sum_consistent_paths(m, alphabet, target, 0, alphabet.blank_index(), 0);
}

/// Enumerates all C^T paths once and groups their mass by collapsed labeling.
inline std::map<Labeling, double> labeling_distribution(const PosteriorMatrix& m,
                                                        const Alphabet& alphabet) {
  check_compatible(m, alphabet);
  detail::check_enumeration_cap(m);
  std::map<Labeling, double> dist;
  std::vector<std::size_t> path(m.frames(), 0);
  while (true) {
    double p = 1.0;
    for (std::size_t t = 0; t < path.size(); ++t) p *= m(t, path[t]);
    dist[collapse(path, alphabet)] += p;
    std::size_t t = 0;
    while (t < path.size() && ++path[t] == m.columns()) path[t++] = 0;
    if (t == path.size()) break;
  }
  return dist;
}

}  // namespace lexctc
