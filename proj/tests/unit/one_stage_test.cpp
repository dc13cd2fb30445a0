// Copyright 2026 The qualplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include "qualplan.hpp"
#include "random_models.hpp"

namespace qualplan {
namespace {

using testing::MdpShape;
using testing::Rng;

// Straight from the definitions, on ranks.
std::size_t brute_optimistic(const PiMdpModel& m, StateId s, ActionId a) {
  std::size_t best = 0;
  for (StateId x = 0; x < m.num_states(); ++x) {
    best = std::max(best, std::min(m.transition(s, a, x).rank(), m.utility(x).rank()));
  }
  return best;
}

std::size_t brute_pessimistic(const PiMdpModel& m, StateId s, ActionId a) {
  const std::size_t top = m.scale().size() - 1;
  std::size_t worst = top;
  for (StateId x = 0; x < m.num_states(); ++x) {
    worst = std::min(worst, std::max(top - m.transition(s, a, x).rank(), m.utility(x).rank()));
  }
  return worst;
}

PiMdpModel certain_move() {
  Scale sc({"0", "0.2", "0.5", "0.8", "1"});
  PiMdpModel m(sc, {"s0", "x0", "x1"}, {"a"});
  m.set_transition(0, 0, 1, sc.top());
  m.set_transition(1, 0, 1, sc.top());
  m.set_transition(2, 0, 2, sc.top());
  m.set_utility(1, sc.parse("0.5"));
  m.set_utility(2, sc.top());
  return m;
}

TEST(OneStageTest, CertainSuccessorGivesItsUtility) {
  auto m = certain_move();
  EXPECT_EQ(optimistic_utility(m, 0, 0), m.scale().parse("0.5"));
  EXPECT_EQ(pessimistic_utility(m, 0, 0), m.scale().parse("0.5"));
}

TEST(OneStageTest, TopUtilityEverywhere) {
  Rng rng(11);
  auto m = testing::random_mdp(rng, MdpShape{4, 2, 5, false, true});
  for (StateId s = 0; s < 4; ++s) m.set_utility(s, m.scale().top());
  for (StateId s = 0; s < 4; ++s) {
    for (ActionId a : m.actions(s)) {
      EXPECT_TRUE(optimistic_utility(m, s, a).is_top());
      EXPECT_TRUE(pessimistic_utility(m, s, a).is_top());
    }
  }
}

TEST(OneStageTest, BottomUtilityWithPlausibleSuccessor) {
  auto m = certain_move();
  for (StateId s = 0; s < 3; ++s) m.set_utility(s, m.scale().bottom());
  EXPECT_TRUE(pessimistic_utility(m, 0, 0).is_bottom());
}

TEST(OneStageTest, UnavailableActionThrows) {
  Scale sc = Scale::ranks(2);
  PiMdpModel m(sc, {"x"}, {"a", "b"});
  m.set_transition(0, 0, 0, sc.top());
  EXPECT_THROW(optimistic_utility(m, 0, 1), InvalidArgument);
  EXPECT_THROW(pessimistic_utility(m, 0, 1), InvalidArgument);
}

TEST(OneStageTest, MatchesBruteForceOnRandomRows) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 1, 5, false, true});
    for (StateId s = 0; s < 4; ++s) {
      EXPECT_EQ(optimistic_utility(m, s, 0).rank(), brute_optimistic(m, s, 0));
      EXPECT_EQ(pessimistic_utility(m, s, 0).rank(), brute_pessimistic(m, s, 0));
    }
  }
}

TEST(OneStageTest, PessimisticBelowOptimisticForNormalizedUtility) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 2, 5, false, true});
    m.set_utility(testing::pick(rng, 0, 3), m.scale().top());
    for (StateId s = 0; s < 4; ++s) {
      for (ActionId a : m.actions(s)) EXPECT_LE(pessimistic_utility(m, s, a), optimistic_utility(m, s, a));
    }
  }
}

TEST(OneStageTest, MonotoneInUtilityExhaustive) {
  // Two successors on a three-level scale: every row and every pair mu <= mu'.
  Scale sc = Scale::ranks(3);
  for (Level p0 : sc.levels()) {
    for (Level p1 : sc.levels()) {
      if (!p0.is_top() && !p1.is_top()) continue;
      std::vector<Level> row{p0, p1};
      for (Level a0 : sc.levels()) {
        for (Level a1 : sc.levels()) {
          for (Level b0 : sc.levels()) {
            for (Level b1 : sc.levels()) {
              if (!(a0 <= b0 && a1 <= b1)) continue;
              std::vector<Level> lo{a0, a1}, hi{b0, b1};
              EXPECT_LE(pessimistic_utility(sc, row, lo), pessimistic_utility(sc, row, hi));
              EXPECT_LE(optimistic_utility(sc, row, lo), optimistic_utility(sc, row, hi));
            }
          }
        }
      }
    }
  }
}

TEST(OneStageTest, ImpossibleSuccessorsDoNotMatter) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 1, 5, false, true});
    auto row = m.row(0, 0);
    std::vector<Level> poss, util;
    for (StateId x = 0; x < 4; ++x) {
      if (row[x].is_bottom()) continue;
      poss.push_back(row[x]);
      util.push_back(m.utility(x));
    }
    EXPECT_EQ(optimistic_utility(m, 0, 0), optimistic_utility(m.scale(), poss, util));
    EXPECT_EQ(pessimistic_utility(m, 0, 0), pessimistic_utility(m.scale(), poss, util));
  }
}

}  // namespace
}  // namespace qualplan
