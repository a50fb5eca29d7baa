#!/usr/bin/env python3
# Copyright 2026 The lexctc Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates include/lexctc/detail/unicode_tables.hpp from unicodedata."""
import sys
import unicodedata

LIMIT = 0x30000


def main(out):
    decomp, ccc, lower = [], [], []
    for cp in range(LIMIT):
        if 0xD800 <= cp <= 0xDFFF or 0xAC00 <= cp <= 0xD7A3:
            continue
        ch = chr(cp)
        c = unicodedata.combining(ch)
        if c:
            ccc.append((cp, c))
        d = unicodedata.decomposition(ch)
        if d and not d.startswith("<"):
            parts = [int(p, 16) for p in d.split()]
            first = parts[0]
            second = parts[1] if len(parts) > 1 else 0
            # A pair is a primary composite when NFC recomposes it.
            composes = len(parts) == 2 and unicodedata.normalize(
                "NFC", chr(first) + chr(second)) == ch
            decomp.append((cp, first, second, 1 if composes else 0))
        lo = ch.lower()
        if len(lo) == 1 and lo != ch:
            lower.append((cp, ord(lo)))
    w = out.write
    w("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
      % unicodedata.unidata_version)
    w("#pragma once\n\n#include <cstdint>\n\nnamespace lexctc::detail {\n\n")
    w("struct DecompositionEntry { char32_t code, first, second; bool composes; };\n")
    w("struct CombiningClassEntry { char32_t code; std::uint8_t ccc; };\n")
    w("struct LowercaseEntry { char32_t upper, lower; };\n\n")
    w("inline constexpr DecompositionEntry kDecompositions[] = {\n")
    for e in decomp:
        w("    {0x%X, 0x%X, 0x%X, %s},\n" % (e[0], e[1], e[2], "true" if e[3] else "false"))
    w("};\n\ninline constexpr CombiningClassEntry kCombiningClasses[] = {\n")
    for e in ccc:
        w("    {0x%X, %d},\n" % e)
    w("};\n\ninline constexpr LowercaseEntry kLowercase[] = {\n")
    for e in lower:
        w("    {0x%X, 0x%X},\n" % e)
    w("};\n\n}  // namespace lexctc::detail\n")


if __name__ == "__main__":
    with open(sys.argv[1], "w", encoding="utf-8") as f:
        main(f)
