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

TEST(OracleTest, TraversalsAgree) {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    MdpShape shape{testing::pick(rng, 1, 3), testing::pick(rng, 1, 3), testing::pick(rng, 2, 5), false, false};
    auto m = testing::random_mdp(rng, shape);
    std::size_t n = testing::pick(rng, 1, 2);
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto dfs = oracle::enumerate_policy_values(m, n, mode, oracle::Traversal::depth_first);
      auto it = oracle::enumerate_policy_values(m, n, mode, oracle::Traversal::iterative);
      EXPECT_EQ(dfs.values, it.values);
      EXPECT_EQ(dfs.best, it.best);
    }
  }
}

TEST(OracleTest, SingleStateSingleAction) {
  Scale sc = Scale::ranks(4);
  PiMdpModel m(sc, {"x"}, {"a"});
  m.set_transition(0, 0, 0, sc.top());
  m.set_utility(0, sc.level(2));
  auto en = oracle::enumerate_policy_values(m, 3);
  EXPECT_EQ(en.policies, 1u);
  EXPECT_EQ(en.best[0], sc.level(2));
}

TEST(OracleTest, Deterministic) {
  Rng a(72), b(72);
  auto ma = testing::random_mdp(a, MdpShape{3, 2, 4, false, true});
  auto mb = testing::random_mdp(b, MdpShape{3, 2, 4, false, true});
  EXPECT_EQ(oracle::enumerate_policy_values(ma, 2).values, oracle::enumerate_policy_values(mb, 2).values);
}

TEST(OracleTest, PolicyCountAndDecoding) {
  Scale sc = Scale::ranks(2);
  PiMdpModel m(sc, {"x", "y"}, {"a", "b", "c"});
  for (ActionId a = 0; a < 3; ++a) m.set_transition(0, a, 0, sc.top());
  for (ActionId a = 0; a < 2; ++a) m.set_transition(1, a, 1, sc.top());
  EXPECT_EQ(oracle::count_policies(m, 2), 36u);
  auto rules = oracle::decode_policy(m, 2, 1 + 3 * 1 + 6 * 2);
  EXPECT_EQ(rules[0], (std::vector<ActionId>{1, 1}));
  EXPECT_EQ(rules[1], (std::vector<ActionId>{2, 0}));
  EXPECT_THROW(oracle::decode_policy(m, 2, 36), InvalidArgument);
}

TEST(OracleTest, CapExceeded) {
  Rng rng(73);
  auto m = testing::random_mdp(rng, MdpShape{4, 3, 3, false, true});
  EXPECT_EQ(oracle::count_policies(m, 3, 1000), 1001u);
  EXPECT_THROW(oracle::enumerate_policy_values(m, 3, UtilityMode::terminal, oracle::Traversal::depth_first, 1000),
               CapExceeded);
  auto pm = testing::state_identifying(m);
  std::vector<Level> start(4, m.scale().top());
  EXPECT_THROW(oracle::enumerate_plan_values(pm, start, 3, UtilityMode::terminal, 10), CapExceeded);
  auto sm = testing::random_stoch(rng, 3, 3, 0.9);
  EXPECT_THROW(oracle::enumerate_stoch_policy_values(sm, 3, 100), CapExceeded);
}

TEST(OracleTest, ZeroDepthPlanIsBeliefUtility) {
  Rng rng(74);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 2, 4, false, false}, 2);
    auto b = testing::random_belief(rng, m.scale(), 3);
    auto en = oracle::enumerate_plan_values(m, b.values(), 0);
    EXPECT_EQ(en.plans, 1u);
    EXPECT_EQ(en.best, belief_utility(m, b));
    EXPECT_EQ(en.best_plan.depth(), 0u);
  }
}

TEST(OracleTest, FullyObservablePlansMatchPolicies) {
  Rng rng(75);
  for (int trial = 0; trial < 60; ++trial) {
    auto base = testing::random_mdp(rng, MdpShape{3, 2, 4, false, false});
    auto m = testing::state_identifying(base);
    std::size_t n = testing::pick(rng, 1, 2);
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto policies = oracle::enumerate_policy_values(base, n, mode);
      for (StateId s = 0; s < 3; ++s) {
        auto crisp = Belief::crisp(base.scale(), 3, s);
        auto plans = oracle::enumerate_plan_values(m, crisp.values(), n, mode);
        EXPECT_EQ(plans.best, policies.best[s]);
        EXPECT_EQ(plans.best_plan.depth(), n);
      }
    }
  }
}

TEST(OracleTest, PlansMatchBeliefRecursion) {
  Rng rng(76);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 2, 3, false, false}, 2);
    Belief start = testing::random_belief(rng, m.scale(), 3);
    auto space = reachable_beliefs(m, std::span<const Belief>(&start, 1));
    std::size_t n = testing::pick(rng, 1, 3);
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto bi = backwards_induction_po(m, space, n, mode);
      auto plans = oracle::enumerate_plan_values(m, start.values(), n, mode);
      EXPECT_EQ(plans.best, bi.values[0][*space.find(start)]);
    }
  }
}

TEST(OracleTest, StationaryStochEvaluation) {
  StochMdpModel m({"x"}, {"stay"}, 0.5);
  m.set_probability(0, 0, 0, 1.0);
  m.set_reward(0, 0, 1.0);
  std::vector<ActionId> policy{0};
  EXPECT_NEAR(oracle::evaluate_stationary_stoch_policy(m, policy)[0], 2.0, 1e-9);
}

}  // namespace
}  // namespace qualplan
