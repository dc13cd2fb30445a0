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
 * @file pi_mdp_solver.hpp
 * @brief Pessimistic-criterion solvers for fully observable possibilistic MDPs.
 *
 * Both solvers iterate the max-min backup
 *
 *   Q(s, a) = min_{s'} max(neg(pi(s'|s,a)), u(s'))
 *   u(s)    = max_{a in A_s} Q(s, a)
 *
 * from u = mu. backwards_induction() applies it a fixed number of times and
 * keeps every stage; in intermediate mode each stage is also met with mu(s).
 * value_iteration() repeats synchronous sweeps until the value table stops
 * changing. Starting from mu the terminal-mode sequence is nondecreasing
 * whenever each state can keep its own utility (a stay action); a sweep that
 * lowers a value raises NonMonotoneIteration rather than risking a cycle. In
 * intermediate mode the meet with mu makes the sequence nonincreasing.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"
#include "qualplan/trace.hpp"

namespace qualplan {

namespace detail {

inline Level backup(const PiMdpModel& m, StateId s, ActionId a, std::span<const Level> next_values) {
  Level acc = m.scale().top();
  auto row = m.row(s, a);
  for (StateId x = 0; x < row.size(); ++x) {
    if (row[x].is_bottom()) continue;  // contributes top
    acc = meet(acc, join(neg(row[x]), next_values[x]));
  }
  return acc;
}

struct Sweep {
  ValueFunction values;
  PolicySet policy;
};

/// One synchronous sweep. Fills q when given.
inline Sweep sweep(const PiMdpModel& m, std::span<const Level> current, const std::vector<ActionId>* incumbents,
                   UtilityMode mode, QTable* q) {
  Sweep out;
  out.values.reserve(m.num_states());
  out.policy.optimal.resize(m.num_states());
  out.policy.chosen.resize(m.num_states());
  std::vector<Level> qs;
  for (StateId s = 0; s < m.num_states(); ++s) {
    auto actions = m.actions(s);
    qs.clear();
    Level best = m.scale().bottom();
    for (ActionId a : actions) {
      Level v = backup(m, s, a, current);
      if (q) q->set(s, a, v);
      if (mode == UtilityMode::intermediate) v = meet(m.utility(s), v);
      qs.push_back(v);
      best = join(best, v);
    }
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (qs[i] == best) out.policy.optimal[s].push_back(actions[i]);
    }
    std::optional<ActionId> incumbent;
    if (incumbents) incumbent = (*incumbents)[s];
    out.policy.chosen[s] = pick_representative(out.policy.optimal[s], incumbent);
    out.values.push_back(best);
  }
  return out;
}

}  // namespace detail

struct FiniteHorizonSolution {
  std::vector<ValueFunction> values;  // values[t], t = 0..N; values[N] = mu
  std::vector<PolicySet> rules;       // rules[t], t = 0..N-1
  SolveTrace trace;                   // sweep k holds stage N-k
};

inline FiniteHorizonSolution backwards_induction(const PiMdpModel& m, std::size_t horizon,
                                                 UtilityMode mode = UtilityMode::terminal) {
  if (horizon == 0) throw InvalidArgument("horizon must be at least 1");
  require_valid(m);
  FiniteHorizonSolution out;
  out.values.resize(horizon + 1);
  out.rules.resize(horizon);
  out.values[horizon].assign(m.utilities().begin(), m.utilities().end());
  out.trace.snapshots.push_back({0, out.values[horizon], {}, {}});
  const std::vector<ActionId>* incumbents = nullptr;
  for (std::size_t k = 1; k <= horizon; ++k) {
    std::size_t t = horizon - k;
    auto step = detail::sweep(m, out.values[t + 1], incumbents, mode, nullptr);
    out.values[t] = std::move(step.values);
    out.rules[t] = std::move(step.policy);
    incumbents = &out.rules[t].chosen;
    out.trace.snapshots.push_back({k, out.values[t], out.rules[t].optimal, out.rules[t].chosen});
  }
  out.trace.sweeps = horizon;
  return out;
}

struct StationarySolution {
  QTable q;
  ValueFunction values;
  PolicySet policy;
  SolveTrace trace;
  std::size_t sweeps = 0;
};

/// Upper bound |A| * |S| * |L| on the number of sweeps.
inline std::size_t sweep_bound(const PiMdpModel& m) {
  return m.num_actions() * m.num_states() * m.scale().size();
}

/// Synchronous sweeps from mu until the values stop changing. Terminal mode
/// must climb and intermediate mode must descend; a step the other way throws
/// NonMonotoneIteration.
inline StationarySolution value_iteration(const PiMdpModel& m, UtilityMode mode = UtilityMode::terminal) {
  require_valid(m);
  StationarySolution out{QTable(m.num_states(), m.num_actions(), m.scale().bottom()), {}, {}, {}, 0};
  ValueFunction current(m.utilities().begin(), m.utilities().end());
  out.trace.snapshots.push_back({0, current, {}, {}});
  const std::size_t bound = sweep_bound(m);
  std::vector<ActionId> incumbents;
  for (std::size_t k = 1;; ++k) {
    if (k > bound) throw NonMonotoneIteration("value iteration exceeded its sweep bound");
    QTable q(m.num_states(), m.num_actions(), m.scale().bottom());
    auto step = detail::sweep(m, current, k == 1 ? nullptr : &incumbents, mode, &q);
    for (StateId s = 0; s < m.num_states(); ++s) {
      bool wrong_way = mode == UtilityMode::terminal ? step.values[s] < current[s] : step.values[s] > current[s];
      if (wrong_way) {
        throw NonMonotoneIteration("sweep " + std::to_string(k) + " moves the value of state " + m.state_name(s) +
                                   " against the iteration direction");
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

/// Pessimistic value of a stationary decision rule over `horizon` steps.
inline ValueFunction policy_value(const PiMdpModel& m, std::span<const ActionId> rule, std::size_t horizon,
                                  UtilityMode mode = UtilityMode::terminal) {
  require_valid(m);
  if (rule.size() != m.num_states()) throw InvalidArgument("policy must assign an action to every state");
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (rule[s] >= m.num_actions() || !m.available(s, rule[s])) {
      throw InvalidArgument("policy action is not available in state " + m.state_name(s));
    }
  }
  ValueFunction v(m.utilities().begin(), m.utilities().end());
  for (std::size_t k = 0; k < horizon; ++k) {
    ValueFunction next;
    next.reserve(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) {
      Level b = detail::backup(m, s, rule[s], v);
      next.push_back(mode == UtilityMode::intermediate ? meet(m.utility(s), b) : b);
    }
    v = std::move(next);
  }
  return v;
}

namespace detail {

/// Iterates a deterministic map on value tables from `start` until it hits a
/// fixpoint. Throws InvalidArgument when the sequence enters a longer cycle.
template <typename Step>
ValueFunction settle(ValueFunction start, Step step, std::size_t limit) {
  std::vector<ValueFunction> seen{start};
  for (std::size_t k = 0; k < limit; ++k) {
    ValueFunction next = step(seen.back());
    if (next == seen.back()) return next;
    if (std::find(seen.begin(), seen.end(), next) != seen.end()) {
      throw InvalidArgument("the policy value cycles without settling; evaluate it at a finite horizon");
    }
    seen.push_back(std::move(next));
  }
  throw InvalidArgument("the policy value did not settle within " + std::to_string(limit) + " steps");
}

}  // namespace detail

/// Long-run value of a stationary rule: the fixpoint reached by repeating its
/// backup from mu. For the policy returned by value_iteration this equals the
/// optimal values.
inline ValueFunction stationary_policy_value(const PiMdpModel& m, std::span<const ActionId> rule,
                                             UtilityMode mode = UtilityMode::terminal,
                                             std::size_t limit = 100'000) {
  ValueFunction mu = policy_value(m, rule, 0, mode);
  std::vector<ActionId> r(rule.begin(), rule.end());
  return detail::settle(
      mu,
      [&](const ValueFunction& v) {
        ValueFunction next;
        next.reserve(m.num_states());
        for (StateId s = 0; s < m.num_states(); ++s) {
          Level b = detail::backup(m, s, r[s], v);
          next.push_back(mode == UtilityMode::intermediate ? meet(m.utility(s), b) : b);
        }
        return next;
      },
      limit);
}

}  // namespace qualplan
