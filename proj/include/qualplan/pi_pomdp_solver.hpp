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

/**
 * @file pi_pomdp_solver.hpp
 * @brief Possibilistic POMDPs solved as fully observable problems over the
 * finite set of possibilistic beliefs.
 *
 * From belief b, action a leads to b_a^o with possibility b_a(o) for every
 * observation o with b_a(o) > 0. The belief-level backup is
 *
 *   Q(b, a) = min_{o : b_a(o) > 0} max(neg(b_a(o)), u(b_a^o))
 *   u(b)    = max_{a in A_b} Q(b, a)        (met with mu(b) in intermediate mode)
 *
 * starting from u = mu(b).
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qualplan/belief.hpp"
#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/pi_mdp_solver.hpp"
#include "qualplan/trace.hpp"

namespace qualplan {

struct BeliefEdge {
  ObsId observation;
  Level possibility;
  std::size_t next;
};

/// Indexed beliefs plus, per (belief, action), the outgoing observation edges.
class BeliefSpace {
 public:
  std::size_t size() const noexcept { return beliefs_.size(); }
  const Belief& belief(std::size_t i) const { return beliefs_.at(i); }
  const std::vector<Belief>& beliefs() const noexcept { return beliefs_; }

  std::optional<std::size_t> find(const Belief& b) const {
    auto it = index_.find(b);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Index of b, inserting it when new.
  std::size_t add(const Belief& b) {
    if (auto i = find(b)) return *i;
    beliefs_.push_back(b);
    index_.emplace(b, beliefs_.size() - 1);
    transitions_.emplace_back();
    return beliefs_.size() - 1;
  }

  void set_edges(std::size_t i, ActionId a, std::vector<BeliefEdge> edges) {
    auto& slots = transitions_.at(i);
    for (auto& [action, list] : slots) {
      if (action == a) {
        list = std::move(edges);
        return;
      }
    }
    slots.emplace_back(a, std::move(edges));
  }

  /// Actions with recorded edges, in insertion order.
  std::vector<ActionId> actions(std::size_t i) const {
    std::vector<ActionId> out;
    for (const auto& slot : transitions_.at(i)) out.push_back(slot.first);
    return out;
  }

  std::span<const BeliefEdge> edges(std::size_t i, ActionId a) const {
    for (const auto& [action, list] : transitions_.at(i)) {
      if (action == a) return list;
    }
    throw InvalidArgument("no edges recorded for this belief and action");
  }

  std::size_t num_edges() const noexcept {
    std::size_t n = 0;
    for (const auto& slots : transitions_) {
      for (const auto& slot : slots) n += slot.second.size();
    }
    return n;
  }

  /// Every belief has edges for some action and every edge stays inside.
  bool closed() const noexcept {
    for (const auto& slots : transitions_) {
      if (slots.empty()) return false;
      for (const auto& slot : slots) {
        for (const auto& e : slot.second) {
          if (e.next >= beliefs_.size()) return false;
        }
      }
    }
    return true;
  }

 private:
  std::vector<Belief> beliefs_;
  std::unordered_map<Belief, std::size_t, BeliefHash> index_;
  std::vector<std::vector<std::pair<ActionId, std::vector<BeliefEdge>>>> transitions_;
};

inline constexpr std::size_t kDefaultBeliefCap = 1'000'000;

namespace detail {

/// Records the edges of belief i for every action in A_b. New beliefs go to the frontier.
inline void expand(const PiPomdpModel& m, BeliefSpace& space, std::size_t i, std::size_t cap,
                   std::deque<std::size_t>* frontier) {
  const Belief b = space.belief(i);
  for (ActionId a : available_actions(m, b)) {
    Belief predicted = predict(m, b, a);
    std::vector<BeliefEdge> edges;
    for (ObsId o = 0; o < m.num_observations(); ++o) {
      Level poss = observation_possibility(m, predicted, a, o);
      if (poss.is_bottom()) continue;
      Belief next = revise(m, predicted, a, o);
      std::size_t before = space.size();
      std::size_t j = space.add(next);
      if (space.size() != before) {
        if (space.size() > cap) throw CapExceeded("belief space exceeds cap of " + std::to_string(cap));
        if (frontier) frontier->push_back(j);
      }
      edges.push_back({o, poss, j});
    }
    space.set_edges(i, a, std::move(edges));
  }
}

}  // namespace detail

/// Breadth-first closure of `initials` under every available action and
/// possible observation.
inline BeliefSpace reachable_beliefs(const PiPomdpModel& m, std::span<const Belief> initials,
                                     std::size_t cap = kDefaultBeliefCap) {
  require_valid(m);
  BeliefSpace space;
  std::deque<std::size_t> frontier;
  for (const auto& b : initials) {
    detail::check_belief(m, b);
    if (!b.normalized()) throw InvalidArgument("initial belief is not normalized");
    std::size_t before = space.size();
    std::size_t i = space.add(b);
    if (space.size() != before) frontier.push_back(i);
  }
  if (space.size() > cap) throw CapExceeded("belief space exceeds cap of " + std::to_string(cap));
  while (!frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop_front();
    detail::expand(m, space, i, cap, &frontier);
  }
  return space;
}

/// Every normalized belief over the scale, in odometer order. Needs
/// |L|^|S| <= cap.
inline BeliefSpace all_beliefs(const PiPomdpModel& m, std::size_t cap = kDefaultBeliefCap) {
  require_valid(m);
  const std::size_t k = m.scale().size();
  std::size_t total = 1;
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    if (total > cap / k) throw CapExceeded("exhaustive belief space exceeds cap of " + std::to_string(cap));
    total *= k;
  }
  BeliefSpace space;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    bool normalized = false;
    std::vector<Level> values;
    values.reserve(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) {
      values.push_back(m.scale().level(rest % k));
      normalized = normalized || values.back().is_top();
      rest /= k;
    }
    if (normalized) space.add(Belief(std::move(values)));
  }
  for (std::size_t i = 0; i < space.size(); ++i) detail::expand(m, space, i, cap, nullptr);
  return space;
}

struct BeliefSolution {
  QTable q;
  ValueFunction values;
  PolicySet policy;
  SolveTrace trace;
  std::size_t sweeps = 0;
};

/// Upper bound |B| * |A| * |L| on the number of sweeps.
inline std::size_t sweep_bound(const PiPomdpModel& m, const BeliefSpace& space) {
  return space.size() * m.num_actions() * m.scale().size();
}

namespace detail {

inline void require_closed(const BeliefSpace& space) {
  if (!space.closed()) throw InvalidModel({"belief space is not closed"});
}

inline Sweep belief_sweep(const PiPomdpModel& m, const BeliefSpace& space, std::span<const Level> current,
                          std::span<const Level> mu, const std::vector<ActionId>* incumbents, UtilityMode mode,
                          QTable* q) {
  Sweep out;
  out.values.reserve(space.size());
  out.policy.optimal.resize(space.size());
  out.policy.chosen.resize(space.size());
  std::vector<std::pair<ActionId, Level>> qs;
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto actions = space.actions(i);
    std::sort(actions.begin(), actions.end());
    qs.clear();
    Level best = m.scale().bottom();
    for (ActionId a : actions) {
      Level v = m.scale().top();
      for (const auto& e : space.edges(i, a)) v = meet(v, join(neg(e.possibility), current[e.next]));
      if (q) q->set(i, a, v);
      if (mode == UtilityMode::intermediate) v = meet(mu[i], v);
      qs.emplace_back(a, v);
      best = join(best, v);
    }
    for (const auto& [a, v] : qs) {
      if (v == best) out.policy.optimal[i].push_back(a);
    }
    std::optional<ActionId> incumbent;
    if (incumbents) incumbent = (*incumbents)[i];
    out.policy.chosen[i] = pick_representative(out.policy.optimal[i], incumbent);
    out.values.push_back(best);
  }
  return out;
}

inline ValueFunction belief_utilities(const PiPomdpModel& m, const BeliefSpace& space) {
  ValueFunction mu;
  mu.reserve(space.size());
  for (const auto& b : space.beliefs()) mu.push_back(belief_utility(m, b));
  return mu;
}

}  // namespace detail

/// Synchronous sweeps over the belief space until the values stop changing.
/// Terminal mode climbs from mu(b) and throws NonMonotoneIteration on a drop;
/// intermediate mode descends from mu(b).
inline BeliefSolution value_iteration_po(const PiPomdpModel& m, const BeliefSpace& space,
                                         UtilityMode mode = UtilityMode::terminal) {
  require_valid(m);
  detail::require_closed(space);
  const ValueFunction mu = detail::belief_utilities(m, space);
  BeliefSolution out{QTable(space.size(), m.num_actions(), m.scale().bottom()), {}, {}, {}, 0};
  ValueFunction current = mu;
  out.trace.snapshots.push_back({0, current, {}, {}});
  const std::size_t bound = sweep_bound(m, space);
  std::vector<ActionId> incumbents;
  for (std::size_t k = 1;; ++k) {
    if (k > bound) throw NonMonotoneIteration("belief value iteration exceeded its sweep bound");
    QTable q(space.size(), m.num_actions(), m.scale().bottom());
    auto step = detail::belief_sweep(m, space, current, mu, k == 1 ? nullptr : &incumbents, mode, &q);
    for (std::size_t i = 0; i < space.size(); ++i) {
      bool wrong_way = mode == UtilityMode::terminal ? step.values[i] < current[i] : step.values[i] > current[i];
      if (wrong_way) {
        throw NonMonotoneIteration("sweep " + std::to_string(k) + " moves the value of belief " +
                                   std::to_string(i) + " against the iteration direction");
      }
    }
    out.trace.snapshots.push_back({k, step.values, step.policy.optimal, step.policy.chosen});
    incumbents = step.policy.chosen;
    bool stable = step.values == current;
    current = std::move(step.values);
    out.q = std::move(q);
    out.policy = std::move(step.policy);
    if (stable) {
      out.sweeps = k;
      break;
    }
  }
  out.values = std::move(current);
  out.trace.sweeps = out.sweeps;
  return out;
}

struct FiniteHorizonBeliefSolution {
  std::vector<ValueFunction> values;  // values[t], t = 0..N; values[N] = mu(b)
  std::vector<PolicySet> rules;       // rules[t], t = 0..N-1
};

/// The belief-level recursion unrolled over `horizon` steps.
inline FiniteHorizonBeliefSolution backwards_induction_po(const PiPomdpModel& m, const BeliefSpace& space,
                                                          std::size_t horizon,
                                                          UtilityMode mode = UtilityMode::terminal) {
  require_valid(m);
  detail::require_closed(space);
  const ValueFunction mu = detail::belief_utilities(m, space);
  FiniteHorizonBeliefSolution out;
  out.values.resize(horizon + 1);
  out.rules.resize(horizon);
  out.values[horizon] = mu;
  const std::vector<ActionId>* incumbents = nullptr;
  for (std::size_t k = 1; k <= horizon; ++k) {
    std::size_t t = horizon - k;
    auto step = detail::belief_sweep(m, space, out.values[t + 1], mu, incumbents, mode, nullptr);
    out.values[t] = std::move(step.values);
    out.rules[t] = std::move(step.policy);
    incumbents = &out.rules[t].chosen;
  }
  return out;
}

/// Long-run value of a stationary belief rule (one action per belief of the
/// space), repeating its backup from mu(b) until it settles.
inline ValueFunction stationary_belief_policy_value(const PiPomdpModel& m, const BeliefSpace& space,
                                                    std::span<const ActionId> rule,
                                                    UtilityMode mode = UtilityMode::terminal,
                                                    std::size_t limit = 100'000) {
  require_valid(m);
  detail::require_closed(space);
  if (rule.size() != space.size()) throw InvalidArgument("policy must assign an action to every belief");
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto acts = space.actions(i);
    if (std::find(acts.begin(), acts.end(), rule[i]) == acts.end()) {
      throw InvalidArgument("policy action is not available at belief " + std::to_string(i));
    }
  }
  const ValueFunction mu = detail::belief_utilities(m, space);
  return detail::settle(
      mu,
      [&](const ValueFunction& v) {
        ValueFunction next;
        next.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) {
          Level acc = m.scale().top();
          for (const auto& e : space.edges(i, rule[i])) acc = meet(acc, join(neg(e.possibility), v[e.next]));
          next.push_back(mode == UtilityMode::intermediate ? meet(mu[i], acc) : acc);
        }
        return next;
      },
      limit);
}

enum class BeliefSearch { reachable, exhaustive };

struct PomdpSolution {
  BeliefSpace space;
  BeliefSolution solution;
  std::size_t initial = 0;
  Level value;
};

/// Builds the belief space (reachable from `initial` by default) and solves it.
inline PomdpSolution solve_pomdp(const PiPomdpModel& m, const Belief& initial,
                                 UtilityMode mode = UtilityMode::terminal,
                                 BeliefSearch search = BeliefSearch::reachable,
                                 std::size_t cap = kDefaultBeliefCap) {
  BeliefSpace space = search == BeliefSearch::reachable
                          ? reachable_beliefs(m, std::span<const Belief>(&initial, 1), cap)
                          : all_beliefs(m, cap);
  auto index = space.find(initial);
  if (!index) throw InvalidArgument("initial belief is not normalized");
  auto solution = value_iteration_po(m, space, mode);
  Level value = solution.values[*index];
  return PomdpSolution{std::move(space), std::move(solution), *index, value};
}

}  // namespace qualplan
