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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lexctc/error.hpp"

namespace lexctc {

/// A recognizer's word hypothesis with the decoder's score for it.
struct Hypothesis {
  std::string text;
  double likelihood = 0.0;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct VoteResult {
  Hypothesis winner;       // likelihood is the winning group's average
  std::size_t votes = 0;   // size of the winning group
};

enum class VotingRule { plurality, borda };

namespace detail {

inline void check_likelihood(double p) {
  if (!std::isfinite(p) || p < 0.0)
    throw InputError("hypothesis likelihood must be finite and non-negative");
}

}  // namespace detail

/// Plurality vote. Hypotheses are grouped by exact text; the largest group
/// wins, ties between groups go to the higher average likelihood (which for
/// all-singleton groups is just the highest likelihood), and any remaining
/// tie to the lexicographically smallest text.
inline VoteResult vote(std::span<const Hypothesis> hypotheses) {
  if (hypotheses.empty()) throw InputError("cannot vote over an empty hypothesis list");
  struct Group {
    std::size_t count = 0;
    double sum = 0.0;
  };
  std::map<std::string, Group> groups;
  for (const auto& h : hypotheses) {
    detail::check_likelihood(h.likelihood);
    auto& g = groups[h.text];
    ++g.count;
    g.sum += h.likelihood;
  }
  // std::map iterates in text order, so strict comparisons keep the smallest text.
  const std::string* best_text = nullptr;
  std::size_t best_count = 0;
  double best_avg = -1.0;
  for (const auto& [text, g] : groups) {
    const double avg = g.sum / static_cast<double>(g.count);
    if (g.count > best_count || (g.count == best_count && avg > best_avg)) {
      best_text = &text;
      best_count = g.count;
      best_avg = avg;
    }
  }
  return {{*best_text, best_avg}, best_count};
}

/// Borda count over per-recognizer ranked lists (best first). A candidate at
/// rank r of a list of n earns n - r points. Ties go to the higher summed
/// likelihood, then to the smaller text. Single-entry ballots reduce it to a
/// vote count with likelihood-sum tie-breaks.
inline VoteResult borda_vote(std::span<const std::vector<Hypothesis>> ballots) {
  struct Tally {
    double points = 0.0;
    double likelihood = 0.0;
    std::size_t first_choices = 0;
  };
  std::map<std::string, Tally> tally;
  bool any = false;
  for (const auto& ballot : ballots) {
    for (std::size_t r = 0; r < ballot.size(); ++r) {
      detail::check_likelihood(ballot[r].likelihood);
      auto& t = tally[ballot[r].text];
      t.points += static_cast<double>(ballot.size() - r);
      t.likelihood += ballot[r].likelihood;
      if (r == 0) ++t.first_choices;
      any = true;
    }
  }
  if (!any) throw InputError("cannot vote over empty ballots");
  const std::string* best_text = nullptr;
  const Tally* best = nullptr;
  for (const auto& [text, t] : tally) {
    if (best == nullptr || t.points > best->points ||
        (t.points == best->points && t.likelihood > best->likelihood)) {
      best_text = &text;
      best = &t;
    }
  }
  return {{*best_text, best->likelihood}, best->first_choices};
}

/// Dispatches on the rule; plurality uses the top entry of each ballot.
inline VoteResult vote(std::span<const std::vector<Hypothesis>> ballots, VotingRule rule) {
  if (rule == VotingRule::borda) return borda_vote(ballots);
  std::vector<Hypothesis> tops;
  for (const auto& b : ballots)
    if (!b.empty()) tops.push_back(b.front());
  return vote(tops);
}

}  // namespace lexctc
