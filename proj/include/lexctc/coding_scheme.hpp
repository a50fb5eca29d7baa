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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "lexctc/ctc.hpp"
#include "lexctc/error.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// Label coding: Plain labels, or labels terminated by a reserved
/// end-of-word character that the recognizer learns as an extra class.
class CodingScheme {
 public:
  static CodingScheme plain() { return CodingScheme{}; }
  static CodingScheme extra_separator(char32_t sep) { return CodingScheme{sep}; }

  bool is_plain() const noexcept { return !separator_; }
  const std::optional<char32_t>& separator() const noexcept { return separator_; }

  friend bool operator==(const CodingScheme&, const CodingScheme&) = default;

 private:
  CodingScheme() = default;
  explicit CodingScheme(char32_t sep) : separator_(sep) {}

  std::optional<char32_t> separator_;
};

/// Candidates tried, in order, when a separator must be picked automatically.
inline constexpr std::array<char32_t, 4> kSeparatorCandidates = {U'|', U'#', U'~', U'¤'};

/// First candidate absent from `used`, or nullopt when all are taken.
inline std::optional<char32_t> select_separator(std::u32string_view used) {
  for (char32_t c : kSeparatorCandidates)
    if (used.find(c) == std::u32string_view::npos) return c;
  return std::nullopt;
}

inline std::u32string encode_label(std::u32string_view word, const CodingScheme& scheme) {
  std::u32string out(word);
  if (auto sep = scheme.separator()) {
    if (word.find(*sep) != std::u32string_view::npos)
      throw InputError("word '" + u32_to_utf8(word) + "' already contains the separator");
    out.push_back(*sep);
  }
  return out;
}

struct DecodedLabel {
  std::u32string word;
  bool had_separator = false;  // always false for Plain
};

/// Strips one trailing separator if present; tolerant of its absence.
inline DecodedLabel decode_label(std::u32string_view label, const CodingScheme& scheme) {
  auto sep = scheme.separator();
  if (sep && !label.empty() && label.back() == *sep)
    return {std::u32string(label.substr(0, label.size() - 1)), true};
  return {std::u32string(label), false};
}

/// Output-layer alphabet for a scheme: characters, then the separator for
/// ExtraSeparator, blank last.
inline Alphabet augment_alphabet(const Alphabet& base, const CodingScheme& scheme) {
  if (base.separator())
    throw InputError("alphabet is already augmented with a separator");
  if (auto sep = scheme.separator()) {
    if (base.contains(*sep))
      throw InputError("separator U+" + codepoint_hex(*sep) + " collides with the alphabet");
    return Alphabet(base.characters(), *sep);
  }
  return base;
}

}  // namespace lexctc
