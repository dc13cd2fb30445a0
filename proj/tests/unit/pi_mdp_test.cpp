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

std::vector<std::size_t> ranks_of(std::span<const Level> v) {
  std::vector<std::size_t> out;
  for (Level x : v) out.push_back(x.rank());
  return out;
}

void expect_monotone(const SolveTrace& trace, bool up) {
  for (std::size_t k = 1; k < trace.snapshots.size(); ++k) {
    const auto& before = trace.snapshots[k - 1].values;
    const auto& after = trace.snapshots[k].values;
    for (std::size_t s = 0; s < before.size(); ++s) {
      if (up) {
        EXPECT_LE(before[s], after[s]) << "sweep " << k;
      } else {
        EXPECT_GE(before[s], after[s]) << "sweep " << k;
      }
    }
  }
}

TEST(PiMdpTest, OneStageEqualsBestPessimisticUtility) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 3, 5, false, false});
    auto sol = backwards_induction(m, 1);
    for (StateId s = 0; s < 4; ++s) {
      Level best = m.scale().bottom();
      for (ActionId a : m.actions(s)) best = join(best, pessimistic_utility(m, s, a));
      EXPECT_EQ(sol.values[0][s], best);
    }
  }
}

TEST(PiMdpTest, TopUtilityConvergesInOneSweep) {
  Rng rng(22);
  auto m = testing::random_mdp(rng, MdpShape{4, 2, 5, false, true});
  for (StateId s = 0; s < 4; ++s) m.set_utility(s, m.scale().top());
  auto sol = value_iteration(m);
  EXPECT_EQ(sol.sweeps, 1u);
  for (Level v : sol.values) EXPECT_TRUE(v.is_top());
}

TEST(PiMdpTest, ZeroHorizonRejected) {
  Rng rng(23);
  auto m = testing::random_mdp(rng, MdpShape{});
  EXPECT_THROW(backwards_induction(m, 0), InvalidArgument);
}

TEST(PiMdpTest, InvalidModelRejected) {
  Scale sc = Scale::ranks(3);
  PiMdpModel m(sc, {"x", "y"}, {"a"});
  m.set_transition(0, 0, 1, sc.level(1));
  m.set_transition(1, 0, 1, sc.top());
  EXPECT_THROW(value_iteration(m), InvalidModel);
  EXPECT_THROW(backwards_induction(m, 2), InvalidModel);
}

TEST(PiMdpTest, ValueIterationMatchesLongHorizonBackwardsInduction) {
  Rng rng(24);
  for (int trial = 0; trial < 150; ++trial) {
    MdpShape shape{testing::pick(rng, 1, 5), testing::pick(rng, 1, 3), testing::pick(rng, 2, 6), true, false};
    auto m = testing::random_mdp(rng, shape);
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto vi = value_iteration(m, mode);
      EXPECT_LE(vi.sweeps, sweep_bound(m));
      expect_monotone(vi.trace, mode == UtilityMode::terminal);
      auto bi = backwards_induction(m, sweep_bound(m) + 1, mode);
      EXPECT_EQ(ranks_of(vi.values), ranks_of(bi.values[0]));
    }
  }
}

TEST(PiMdpTest, BackwardsInductionIsMonotoneInHorizonWithStay) {
  Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 3, 5, true, true});
    auto bi = backwards_induction(m, 6);
    expect_monotone(bi.trace, true);
  }
}

TEST(PiMdpTest, FixpointIsStable) {
  Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 3, 5, true, false});
    auto vi = value_iteration(m);
    auto again = detail::sweep(m, vi.values, nullptr, UtilityMode::terminal, nullptr);
    EXPECT_EQ(again.values, vi.values);
    for (StateId s = 0; s < 4; ++s) {
      for (ActionId a : m.actions(s)) {
        ASSERT_TRUE(vi.q.at(s, a).has_value());
        EXPECT_EQ(*vi.q.at(s, a), detail::backup(m, s, a, vi.values));
      }
      EXPECT_TRUE(std::find(vi.policy.optimal[s].begin(), vi.policy.optimal[s].end(), vi.policy.chosen[s]) !=
                  vi.policy.optimal[s].end());
    }
  }
}

TEST(PiMdpTest, LabelRenamingDoesNotChangeRanks) {
  Rng rng(27);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 2, 4, true, true});
    Scale words({"never", "rarely", "often", "always"});
    PiMdpModel renamed(words, m.state_names(), m.action_names());
    for (StateId s = 0; s < 4; ++s) {
      for (ActionId a : m.actions(s)) {
        for (StateId x = 0; x < 4; ++x) renamed.set_transition(s, a, x, words.level(m.transition(s, a, x).rank()));
      }
      renamed.set_utility(s, words.level(m.utility(s).rank()));
    }
    auto a = value_iteration(m);
    auto b = value_iteration(renamed);
    EXPECT_EQ(ranks_of(a.values), ranks_of(b.values));
    EXPECT_EQ(a.policy.optimal, b.policy.optimal);
    EXPECT_EQ(a.sweeps, b.sweeps);
  }
}

TEST(PiMdpTest, BackwardsInductionMatchesPolicyEnumeration) {
  Rng rng(28);
  for (int trial = 0; trial < 40; ++trial) {
    MdpShape shape{testing::pick(rng, 1, 3), testing::pick(rng, 1, 2), testing::pick(rng, 2, 4), false, false};
    auto m = testing::random_mdp(rng, shape);
    std::size_t n = testing::pick(rng, 1, 2);
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto bi = backwards_induction(m, n, mode);
      auto en = oracle::enumerate_policy_values(m, n, mode);
      EXPECT_EQ(ranks_of(bi.values[0]), ranks_of(en.best));
    }
  }
}

TEST(PiMdpTest, PolicyValueOfOptimalRulesReachesOptimum) {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{4, 3, 5, true, false});
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto vi = value_iteration(m, mode);
      EXPECT_EQ(stationary_policy_value(m, vi.policy.chosen, mode), vi.values);
      auto long_run = policy_value(m, vi.policy.chosen, m.num_states() + 1, mode);
      EXPECT_EQ(long_run, vi.values);
    }
  }
}

TEST(PiMdpTest, PolicyValueNeverBeatsOptimum) {
  Rng rng(30);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_mdp(rng, MdpShape{3, 3, 4, false, true});
    auto bi = backwards_induction(m, 3);
    std::vector<ActionId> rule;
    for (StateId s = 0; s < 3; ++s) rule.push_back(m.actions(s)[testing::pick(rng, 0, m.actions(s).size() - 1)]);
    auto v = policy_value(m, rule, 3);
    for (StateId s = 0; s < 3; ++s) EXPECT_LE(v[s], bi.values[0][s]);
  }
}

TEST(PiMdpTest, PolicyValueChecksTheRule) {
  Scale sc = Scale::ranks(2);
  PiMdpModel m(sc, {"x", "y"}, {"a", "b"});
  m.set_transition(0, 0, 0, sc.top());
  m.set_transition(1, 1, 1, sc.top());
  std::vector<ActionId> bad{0, 0};
  EXPECT_THROW(policy_value(m, bad, 1), InvalidArgument);
  std::vector<ActionId> short_rule{0};
  EXPECT_THROW(policy_value(m, short_rule, 1), InvalidArgument);
}

TEST(PiMdpTest, SwappingStatesIsDetectedAsNonMonotone) {
  Scale sc = Scale::ranks(2);
  PiMdpModel m(sc, {"x", "y"}, {"swap"});
  m.set_transition(0, 0, 1, sc.top());
  m.set_transition(1, 0, 0, sc.top());
  m.set_utility(0, sc.top());
  EXPECT_THROW(value_iteration(m), NonMonotoneIteration);
  std::vector<ActionId> rule{0, 0};
  EXPECT_THROW(stationary_policy_value(m, rule), InvalidArgument);
}

TEST(PiMdpTest, GridworldConvergence) {
  auto room = generate_gridworld(reference_room());
  const auto& m = room.base();
  auto vi = value_iteration(m);
  EXPECT_LE(vi.sweeps, sweep_bound(m));
  expect_monotone(vi.trace, true);
  const auto& last = vi.trace.snapshots.back();
  for (std::size_t k = 4; k < vi.trace.snapshots.size(); ++k) {
    EXPECT_EQ(vi.trace.snapshots[k].values, last.values);
    EXPECT_EQ(vi.trace.snapshots[k].chosen, last.chosen);
  }
  EXPECT_TRUE(vi.trace.snapshots[3].values != last.values || vi.trace.snapshots[3].chosen != last.chosen);
  // Once every value reaches 0.8 all moves tie, so the optimal sets still grow at sweep 5.
  EXPECT_EQ(vi.sweeps, 5u);
  StateId goal = *m.find_state("s33");
  std::vector<std::string> first;
  for (ActionId a : vi.trace.snapshots[1].optimal[goal]) first.push_back(m.action_name(a));
  EXPECT_EQ(first, (std::vector<std::string>{"S", "D", "R"}));
  auto bi = backwards_induction(m, 10);
  EXPECT_EQ(bi.values[0], vi.values);
}

}  // namespace
}  // namespace qualplan
