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

#include <set>

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

TEST(PiPomdpTest, ReachableEqualsFilteredExhaustiveSpace) {
  Rng rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 2, 3, false, false}, 2);
    Belief start = testing::random_belief(rng, m.scale(), 3);
    auto reach = reachable_beliefs(m, std::span<const Belief>(&start, 1));
    auto all = all_beliefs(m);
    // Naive closure over the exhaustive space's edges.
    std::set<std::size_t> seen{*all.find(start)};
    std::vector<std::size_t> todo{*all.find(start)};
    while (!todo.empty()) {
      std::size_t i = todo.back();
      todo.pop_back();
      for (ActionId a : all.actions(i)) {
        for (const auto& e : all.edges(i, a)) {
          if (seen.insert(e.next).second) todo.push_back(e.next);
        }
      }
    }
    ASSERT_EQ(reach.size(), seen.size());
    for (const auto& b : reach.beliefs()) {
      auto j = all.find(b);
      ASSERT_TRUE(j.has_value());
      EXPECT_TRUE(seen.count(*j));
    }
    EXPECT_EQ(all.size(), 27u - 8u);
  }
}

TEST(PiPomdpTest, EdgesCarryPossibleObservationsOnly) {
  Rng rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 2, 4, false, false}, 3);
    Belief start = Belief::ignorance(m.scale(), 3);
    auto space = reachable_beliefs(m, std::span<const Belief>(&start, 1));
    for (std::size_t i = 0; i < space.size(); ++i) {
      EXPECT_EQ(space.actions(i), available_actions(m, space.belief(i)));
      for (ActionId a : space.actions(i)) {
        Level best = m.scale().bottom();
        for (const auto& e : space.edges(i, a)) {
          EXPECT_FALSE(e.possibility.is_bottom());
          best = join(best, e.possibility);
        }
        EXPECT_TRUE(best.is_top());
      }
    }
  }
}

TEST(PiPomdpTest, CrispFullyObservableCaseMatchesTheMdp) {
  Rng rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    auto base = testing::random_mdp(rng, MdpShape{testing::pick(rng, 1, 4), 3, 5, true, false});
    auto m = testing::state_identifying(base);
    auto vi = value_iteration(base);
    for (StateId s = 0; s < base.num_states(); ++s) {
      auto sol = solve_pomdp(m, Belief::crisp(m.scale(), m.num_states(), s));
      EXPECT_EQ(sol.value, vi.values[s]);
      // Only crisp beliefs are reachable from a crisp start.
      for (const auto& b : sol.space.beliefs()) EXPECT_EQ(b.support().size(), 1u);
    }
  }
}

TEST(PiPomdpTest, SingleStateModel) {
  Scale sc = Scale::ranks(3);
  PiMdpModel base(sc, {"only"}, {"a", "b"});
  base.set_transition(0, 0, 0, sc.top());
  base.set_transition(0, 1, 0, sc.top());
  base.set_utility(0, sc.level(1));
  PiPomdpModel m(base, {"o"});
  m.set_observation(0, 0, 0, sc.top());
  m.set_observation(0, 1, 0, sc.top());
  auto sol = solve_pomdp(m, Belief::ignorance(sc, 1));
  EXPECT_EQ(sol.space.size(), 1u);
  EXPECT_EQ(sol.value, sc.level(1));
  EXPECT_EQ(sol.solution.sweeps, 1u);
  EXPECT_EQ(sol.solution.policy.chosen[0], ActionId{0});
}

TEST(PiPomdpTest, ValueIterationMatchesLongHorizonRecursion) {
  Rng rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 2, 3, true, false}, 2);
    Belief start = Belief::ignorance(m.scale(), 3);
    auto space = reachable_beliefs(m, std::span<const Belief>(&start, 1));
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto vi = value_iteration_po(m, space, mode);
      EXPECT_LE(vi.sweeps, sweep_bound(m, space));
      auto bi = backwards_induction_po(m, space, sweep_bound(m, space) + 1, mode);
      EXPECT_EQ(ranks_of(vi.values), ranks_of(bi.values[0]));
      EXPECT_EQ(stationary_belief_policy_value(m, space, vi.policy.chosen, mode), vi.values);
    }
  }
}

TEST(PiPomdpTest, SnapshotsAreMonotone) {
  Rng rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = testing::random_pomdp(rng, MdpShape{3, 3, 4, true, false}, 2);
    Belief start = Belief::ignorance(m.scale(), 3);
    auto space = reachable_beliefs(m, std::span<const Belief>(&start, 1));
    for (auto mode : {UtilityMode::terminal, UtilityMode::intermediate}) {
      auto vi = value_iteration_po(m, space, mode);
      const auto& snaps = vi.trace.snapshots;
      for (std::size_t k = 1; k < snaps.size(); ++k) {
        for (std::size_t i = 0; i < space.size(); ++i) {
          if (mode == UtilityMode::terminal) {
            EXPECT_LE(snaps[k - 1].values[i], snaps[k].values[i]);
          } else {
            EXPECT_GE(snaps[k - 1].values[i], snaps[k].values[i]);
          }
        }
      }
    }
  }
}

TEST(PiPomdpTest, RoomBeliefsIncludeTheQuotedSets) {
  auto room = generate_gridworld(reference_room());
  auto sol = solve_pomdp(room, Belief::ignorance(room.scale(), room.num_states()));
  std::set<std::string> found;
  for (const auto& b : sol.space.beliefs()) found.insert(format_belief(room, b));
  for (const char* quoted : {"{s11:1,s13:1,s21:1,s22:1,s23:1,s32:1,s33:1}", "{s21:1,s32:1}", "{s22:1}", "{s23:1}",
                             "{s32:1}", "{s33:1}", "{s11:1,s13:1}", "{s21:1}"}) {
    EXPECT_TRUE(found.count(quoted)) << quoted;
  }
  // Moving up from s21 or s23 pins the robot to a corner.
  EXPECT_TRUE(found.count("{s11:1}"));
  EXPECT_TRUE(found.count("{s13:1}"));
  EXPECT_EQ(found.size(), 10u);
  EXPECT_EQ(room.scale().label(sol.value), "0.8");
  EXPECT_EQ(sol.solution.sweeps, 5u);
}

TEST(PiPomdpTest, IntermediateModeNeverExceedsBeliefUtility) {
  auto room = generate_gridworld(reference_room());
  auto sol = solve_pomdp(room, Belief::ignorance(room.scale(), room.num_states()), UtilityMode::intermediate);
  for (std::size_t i = 0; i < sol.space.size(); ++i) {
    EXPECT_LE(sol.solution.values[i], belief_utility(room, sol.space.belief(i)));
  }
}

TEST(PiPomdpTest, CapIsEnforced) {
  auto room = generate_gridworld(reference_room());
  Belief start = Belief::ignorance(room.scale(), room.num_states());
  EXPECT_THROW(reachable_beliefs(room, std::span<const Belief>(&start, 1), 5), CapExceeded);
  EXPECT_THROW(all_beliefs(room, 1000), CapExceeded);
}

TEST(PiPomdpTest, UnnormalizedStartRejected) {
  auto room = generate_gridworld(reference_room());
  Belief start(std::vector<Level>(room.num_states(), room.scale().parse("0.5")));
  EXPECT_THROW(solve_pomdp(room, start), InvalidArgument);
}

}  // namespace
}  // namespace qualplan
