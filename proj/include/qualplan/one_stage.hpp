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

#pragma once

// Single-step qualitative criteria. For a possibility row pi(.) and a utility
// mu(.) over the same outcomes:
//
//   optimistic   u*  = max_x min(pi(x), mu(x))
//   pessimistic  u_* = min_x max(neg(pi(x)), mu(x))

#include <span>
#include <string>

#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

inline Level optimistic_utility(const Scale& scale, std::span<const Level> poss,
                                std::span<const Level> util) {
  if (poss.size() != util.size()) throw InvalidArgument("possibility and utility sizes differ");
  Level acc = scale.bottom();
  for (std::size_t x = 0; x < poss.size(); ++x) acc = join(acc, meet(poss[x], util[x]));
  return acc;
}

inline Level pessimistic_utility(const Scale& scale, std::span<const Level> poss,
                                 std::span<const Level> util) {
  if (poss.size() != util.size()) throw InvalidArgument("possibility and utility sizes differ");
  Level acc = scale.top();
  for (std::size_t x = 0; x < poss.size(); ++x) acc = meet(acc, join(neg(poss[x]), util[x]));
  return acc;
}

namespace detail {
inline void require_available(const PiMdpModel& m, StateId s, ActionId a) {
  if (!m.available(s, a)) {
    throw InvalidArgument("action " + m.action_name(a) + " is not available in state " + m.state_name(s));
  }
}
}  // namespace detail

inline Level optimistic_utility(const PiMdpModel& m, StateId s0, ActionId a) {
  detail::require_available(m, s0, a);
  return optimistic_utility(m.scale(), m.row(s0, a), m.utilities());
}

inline Level pessimistic_utility(const PiMdpModel& m, StateId s0, ActionId a) {
  detail::require_available(m, s0, a);
  return pessimistic_utility(m.scale(), m.row(s0, a), m.utilities());
}

}  // namespace qualplan
