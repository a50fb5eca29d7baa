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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lexctc/error.hpp"
#include "lexctc/unicode.hpp"

namespace lexctc {

/// Character set kept as a sorted, duplicate-free string.
class CharSet {
 public:
  CharSet() = default;
  CharSet(std::u32string chars) : chars_(std::move(chars)) {  // NOLINT: implicit by intent
    std::sort(chars_.begin(), chars_.end());
    chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
  }
  CharSet(std::initializer_list<char32_t> chars) : CharSet(std::u32string(chars)) {}

  bool contains(char32_t c) const { return std::binary_search(chars_.begin(), chars_.end(), c); }
  bool empty() const noexcept { return chars_.empty(); }
  std::size_t size() const noexcept { return chars_.size(); }
  const std::u32string& chars() const noexcept { return chars_; }
  auto begin() const noexcept { return chars_.begin(); }
  auto end() const noexcept { return chars_.end(); }

  friend bool operator==(const CharSet&, const CharSet&) = default;

 private:
  std::u32string chars_;
};

struct Completion {
  std::u32string word;
  std::u32string remainder;

  friend bool operator==(const Completion&, const Completion&) = default;
};

/// Immutable trie over a dictionary, plus the word/non-word character split
/// that drives the two decoder states.
class PrefixTree {
 public:
  using NodeId = std::uint32_t;
  using Edge = std::pair<char32_t, NodeId>;
  static constexpr NodeId kRoot = 0;

  PrefixTree() : nodes_(1) {}

  /// Builds the trie. Duplicates are dropped; every word must be non-empty and
  /// made only of `word_chars`. The two character sets must be disjoint.
  static PrefixTree build(const std::vector<std::u32string>& words, CharSet word_chars,
                          CharSet nonword_chars) {
    for (char32_t c : nonword_chars)
      if (word_chars.contains(c))
        throw InputError("U+" + codepoint_hex(c) + " is both a word and a non-word character");
    PrefixTree tree;
    tree.word_chars_ = std::move(word_chars);
    tree.nonword_chars_ = std::move(nonword_chars);
    for (const auto& w : words) {
      if (w.empty()) throw InputError("dictionary contains an empty word");
      for (char32_t c : w)
        if (!tree.word_chars_.contains(c))
          throw InputError("dictionary word '" + u32_to_utf8(w) + "' contains non-word character U+" +
                           codepoint_hex(c));
      tree.insert(w);
    }
    return tree;
  }

  const CharSet& word_chars() const noexcept { return word_chars_; }
  const CharSet& nonword_chars() const noexcept { return nonword_chars_; }
  std::size_t word_count() const noexcept { return word_count_; }
  bool empty() const noexcept { return word_count_ == 0; }

  // Node-level access used by the decoder hot loop.

  std::optional<NodeId> child(NodeId node, char32_t c) const {
    const auto& kids = nodes_[node].children;
    auto it = std::lower_bound(kids.begin(), kids.end(), c,
                               [](const Edge& e, char32_t ch) { return e.first < ch; });
    if (it == kids.end() || it->first != c) return std::nullopt;
    return it->second;
  }

  std::optional<NodeId> find(std::u32string_view prefix) const {
    NodeId node = kRoot;
    for (char32_t c : prefix) {
      auto next = child(node, c);
      if (!next) return std::nullopt;
      node = *next;
    }
    return node;
  }

  bool is_terminal(NodeId node) const { return nodes_[node].terminal; }

  /// Outgoing edges of a node, ascending by character.
  std::span<const Edge> children(NodeId node) const { return nodes_[node].children; }

  /// Outgoing characters of a node, ascending.
  std::u32string child_chars(NodeId node) const {
    std::u32string out;
    for (const auto& e : nodes_[node].children) out.push_back(e.first);
    return out;
  }

  // Query API.

  /// Characters c such that prefix + c is a prefix of a stored word.
  std::u32string next_chars(std::u32string_view prefix) const {
    auto node = find(prefix);
    return node ? child_chars(*node) : std::u32string{};
  }

  bool is_word(std::u32string_view s) const {
    auto node = find(s);
    return node && nodes_[*node].terminal;
  }

  bool contains(std::u32string_view s) const { return is_word(s); }

  /// Every stored word starting with `prefix`, lexicographic by word.
  std::vector<Completion> completions(std::u32string_view prefix) const {
    std::vector<Completion> out;
    auto node = find(prefix);
    if (!node) return out;
    std::u32string suffix;
    collect(*node, std::u32string(prefix), suffix, out);
    return out;
  }

  std::size_t completion_count(NodeId node) const { return nodes_[node].words_below; }

  /// All stored words, lexicographic.
  std::vector<std::u32string> words() const {
    std::vector<std::u32string> out;
    for (auto& c : completions(U"")) out.push_back(std::move(c.word));
    return out;
  }

 private:
  struct Node {
    std::vector<Edge> children;  // sorted by character
    bool terminal = false;
    std::size_t words_below = 0;
  };


  void insert(const std::u32string& word) {
    std::vector<NodeId> path{kRoot};
    NodeId node = kRoot;
    for (char32_t c : word) {
      auto next = child(node, c);
      if (!next) {
        const auto id = static_cast<NodeId>(nodes_.size());
        nodes_.emplace_back();
        auto& kids = nodes_[node].children;
        auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                   [](const Edge& e, char32_t ch) { return e.first < ch; });
        kids.insert(it, {c, id});
        next = id;
      }
      node = *next;
      path.push_back(node);
    }
    if (nodes_[node].terminal) return;
    nodes_[node].terminal = true;
    ++word_count_;
    for (NodeId n : path) ++nodes_[n].words_below;
  }

  void collect(NodeId node, const std::u32string& prefix, std::u32string& suffix,
               std::vector<Completion>& out) const {
    if (nodes_[node].terminal) out.push_back({prefix + suffix, suffix});
    for (const auto& [c, kid] : nodes_[node].children) {
      suffix.push_back(c);
      collect(kid, prefix, suffix, out);
      suffix.pop_back();
    }
  }

  std::vector<Node> nodes_;
  CharSet word_chars_;
  CharSet nonword_chars_;
  std::size_t word_count_ = 0;
};

}  // namespace lexctc
