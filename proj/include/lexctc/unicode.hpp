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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexctc/detail/unicode_tables.hpp"
#include "lexctc/error.hpp"

namespace lexctc {

/// Decodes UTF-8 into scalar values. Throws InputError on malformed input.
inline std::u32string utf8_to_u32(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw InputError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + len > s.size()) throw InputError("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) throw InputError("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw InputError("invalid UTF-8 scalar value");
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string u32_to_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append_utf8(out, cp);
  return out;
}

/// "00E9"-style rendering used in diagnostics.
inline std::string codepoint_hex(char32_t c) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (int shift = c > 0xFFFF ? 20 : 12; shift >= 0; shift -= 4)
    out.push_back(kDigits[(c >> shift) & 0xF]);
  return out;
}

namespace detail {

// Hangul syllables are composed algorithmically rather than tabulated.
inline constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161,
                          kTBase = 0x11A7;
inline constexpr char32_t kLCount = 19, kVCount = 21, kTCount = 28;
inline constexpr char32_t kNCount = kVCount * kTCount, kSCount = kLCount * kNCount;

inline std::uint8_t combining_class(char32_t cp) {
  const auto* first = std::begin(kCombiningClasses);
  const auto* last = std::end(kCombiningClasses);
  const auto* it = std::lower_bound(
      first, last, cp, [](const CombiningClassEntry& e, char32_t c) { return e.code < c; });
  return (it != last && it->code == cp) ? it->ccc : 0;
}

inline const DecompositionEntry* find_decomposition(char32_t cp) {
  const auto* first = std::begin(kDecompositions);
  const auto* last = std::end(kDecompositions);
  const auto* it = std::lower_bound(
      first, last, cp, [](const DecompositionEntry& e, char32_t c) { return e.code < c; });
  return (it != last && it->code == cp) ? it : nullptr;
}

inline void decompose_into(char32_t cp, std::u32string& out) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    const char32_t s = cp - kSBase;
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (const char32_t t = s % kTCount; t != 0) out.push_back(kTBase + t);
    return;
  }
  if (const auto* d = find_decomposition(cp)) {
    decompose_into(d->first, out);
    if (d->second != 0) decompose_into(d->second, out);
    return;
  }
  out.push_back(cp);
}

struct CompositionPair {
  char32_t first, second, composite;
};

inline const std::vector<CompositionPair>& composition_pairs() {
  static const std::vector<CompositionPair> pairs = [] {
    std::vector<CompositionPair> v;
    for (const auto& d : kDecompositions)
      if (d.composes) v.push_back({d.first, d.second, d.code});
    std::sort(v.begin(), v.end(), [](const CompositionPair& a, const CompositionPair& b) {
      return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    return v;
  }();
  return pairs;
}

inline char32_t compose_pair(char32_t a, char32_t b) {
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount)
    return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 && b > kTBase &&
      b < kTBase + kTCount)
    return a + (b - kTBase);
  const auto& pairs = composition_pairs();
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::pair{a, b},
                             [](const CompositionPair& p, std::pair<char32_t, char32_t> k) {
                               return p.first != k.first ? p.first < k.first
                                                         : p.second < k.second;
                             });
  return (it != pairs.end() && it->first == a && it->second == b) ? it->composite : 0;
}

}  // namespace detail

/// Canonical composition (NFC): full canonical decomposition, canonical
/// ordering of combining marks, then recomposition of primary composites.
inline std::u32string nfc(std::u32string_view s) {
  std::u32string d;
  d.reserve(s.size());
  for (char32_t cp : s) detail::decompose_into(cp, d);

  // Stable sort of each run of non-starters by combining class.
  for (std::size_t i = 0; i < d.size();) {
    if (detail::combining_class(d[i]) == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < d.size() && detail::combining_class(d[j]) != 0) ++j;
    std::stable_sort(d.begin() + static_cast<std::ptrdiff_t>(i),
                     d.begin() + static_cast<std::ptrdiff_t>(j), [](char32_t a, char32_t b) {
                       return detail::combining_class(a) < detail::combining_class(b);
                     });
    i = j;
  }

  std::u32string out;
  out.reserve(d.size());
  std::size_t starter = std::u32string::npos;
  int last_ccc = -1;
  for (char32_t cp : d) {
    const int ccc = detail::combining_class(cp);
    if (starter != std::u32string::npos) {
      const bool blocked = !out.empty() && out.size() - 1 != starter &&
                           (last_ccc == 0 || last_ccc >= ccc);
      if (!blocked) {
        if (char32_t comp = detail::compose_pair(out[starter], cp)) {
          out[starter] = comp;
          continue;
        }
      }
    }
    if (ccc == 0) {
      starter = out.size();
      last_ccc = -1;
    } else {
      last_ccc = ccc;
    }
    out.push_back(cp);
    if (ccc == 0) last_ccc = 0;
  }
  return out;
}

inline char32_t to_lower(char32_t cp) {
  const auto* first = std::begin(detail::kLowercase);
  const auto* last = std::end(detail::kLowercase);
  const auto* it = std::lower_bound(
      first, last, cp, [](const detail::LowercaseEntry& e, char32_t c) { return e.upper < c; });
  return (it != last && it->upper == cp) ? it->lower : cp;
}

/// Simple (one-to-one) lowercase mapping applied per scalar value.
inline std::u32string to_lower(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& cp : out) cp = to_lower(cp);
  return out;
}

}  // namespace lexctc
