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


#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "lexctc/ensemble.hpp"
#include "voting_fixtures.hpp"

namespace lexctc {
namespace {

std::string winner(std::vector<Hypothesis> h) { return vote(h).winner.text; }

TEST(VoteTest, CascadeExamples) {
  EXPECT_EQ(winner({{"a", .5}, {"a", .1}, {"b", .9}}), "a");
  EXPECT_EQ(winner({{"a", .2}, {"a", .3}, {"b", .6}, {"b", .1}}), "b");
  EXPECT_EQ(winner({{"a", .2}, {"b", .3}, {"c", .4}}), "c");
  const std::vector<Hypothesis> one{{"solo", 0.25}};
  const auto r = vote(one);
  EXPECT_EQ(r.winner, (Hypothesis{"solo", 0.25}));
  EXPECT_EQ(r.votes, 1u);
}

TEST(VoteTest, ReportsGroupSizeAndAverage) {
  const std::vector<Hypothesis> h{{"a", .2}, {"a", .4}, {"b", .9}};
  const auto r = vote(h);
  EXPECT_EQ(r.votes, 2u);
  EXPECT_DOUBLE_EQ(r.winner.likelihood, 0.3);
}

TEST(VoteTest, Errors) {
  EXPECT_THROW(vote(std::vector<Hypothesis>{}), InputError);
  EXPECT_THROW(vote(std::vector<Hypothesis>{{"a", -1.0}}), InputError);
  EXPECT_THROW(vote(std::vector<Hypothesis>{{"a", std::numeric_limits<double>::infinity()}}),
               InputError);
}

TEST(VoteTest, HandFixture) {
  for (const auto& c : testing::hand_vote_cases()) {
    EXPECT_EQ(vote(c.ballot).winner.text, c.winner) << c.branch;
    EXPECT_EQ(testing::reference_vote(c.ballot), c.winner) << c.branch;
  }
}

TEST(VoteTest, AllFiveVoterPartitionsAgreeWithReference) {
  const auto ballots = testing::exhaustive_five_voter_ballots(1, 20);
  EXPECT_EQ(ballots.size(), 52u * 20u);
  for (const auto& b : ballots) EXPECT_EQ(vote(b).winner.text, testing::reference_vote(b));
}

TEST(VoteTest, PermutationInvariance) {
  std::mt19937_64 rng(7);
  const auto ballots = testing::exhaustive_five_voter_ballots(2, 1);
  for (int i = 0; i < 1000; ++i) {
    auto b = ballots[static_cast<std::size_t>(i) % ballots.size()];
    const auto before = vote(b);
    std::shuffle(b.begin(), b.end(), rng);
    const auto after = vote(b);
    EXPECT_EQ(before.winner.text, after.winner.text);
    EXPECT_EQ(before.votes, after.votes);
  }
}

TEST(VoteTest, ThreeOfFiveAlwaysWins) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<Hypothesis> h{{"maj", u(rng) * 1e-6}, {"maj", u(rng) * 1e-6}, {"maj", u(rng) * 1e-6},
                              {"x", u(rng)}, {"y", u(rng)}};
    std::shuffle(h.begin(), h.end(), rng);
    EXPECT_EQ(winner(h), "maj");
  }
}

TEST(VoteTest, ScalingLikelihoodsKeepsUniquePlurality) {
  std::vector<Hypothesis> h{{"a", .1}, {"a", .2}, {"b", .9}, {"c", .5}};
  const auto before = winner(h);
  for (auto& x : h) x.likelihood *= 1e-9;
  EXPECT_EQ(winner(h), before);
}

TEST(BordaTest, RanksByPointsThenLikelihood) {
  // Three rankings of {a, b, c}; points n - r with n = 3.
  const std::vector<std::vector<Hypothesis>> ballots{
      {{"a", .5}, {"b", .3}, {"c", .2}},
      {{"b", .6}, {"a", .3}, {"c", .1}},
      {{"b", .4}, {"c", .3}, {"a", .2}}};
  const auto r = borda_vote(ballots);
  EXPECT_EQ(r.winner.text, "b");  // a: 3+2+1 = 6, b: 2+3+3 = 8, c: 1+1+2 = 4
  EXPECT_EQ(vote(ballots, VotingRule::borda).winner.text, "b");
  // Plurality over the top entries: b has two first places.
  EXPECT_EQ(vote(ballots, VotingRule::plurality).winner.text, "b");
}

}  // namespace
}  // namespace lexctc
