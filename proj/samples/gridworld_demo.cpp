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


// Builds the 3x3 room, solves it fully observable and from total ignorance,
// and prints both policies.

#include <iostream>

#include "qualplan.hpp"

int main() {
  using namespace qualplan;
  const PiPomdpModel room = generate_gridworld(reference_room());
  const PiMdpModel& mdp = room.base();
  const Scale& scale = room.scale();

  auto vi = value_iteration(mdp);
  std::cout << "fully observable, " << vi.sweeps << " sweeps\n";
  for (StateId s = 0; s < mdp.num_states(); ++s) {
    std::cout << "  " << mdp.state_name(s) << "  " << scale.label(vi.values[s]) << "  "
              << mdp.action_name(vi.policy.chosen[s]) << '\n';
  }

  auto po = solve_pomdp(room, Belief::ignorance(scale, room.num_states()));
  std::cout << "from ignorance: value " << scale.label(po.value) << ", " << po.space.size() << " beliefs\n";
  for (std::size_t i = 0; i < po.space.size(); ++i) {
    std::cout << "  " << format_belief(room, po.space.belief(i)) << "  " << scale.label(po.solution.values[i])
              << "  " << mdp.action_name(po.solution.policy.chosen[i]) << '\n';
  }
}
