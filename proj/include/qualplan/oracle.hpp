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
 * @file oracle.hpp
 * @brief Brute-force evaluators for certifying the solvers on small instances.
 *
 * Nothing here calls into the solvers or the belief calculus. Models are
 * copied into plain rank tables and every quantity is recomputed from its
 * definition:
 *
 *   - a stage-indexed policy's value at s0 is the min over trajectories of
 *     max(neg(joint possibility), satisfaction), the joint possibility being
 *     the min of the step possibilities;
 *   - a contingent plan's value is the observation-branching recursion
 *     min_o max(neg(b_a(o)), value of the branch);
 *   - a stochastic policy's value is the probability-weighted reward sum.
 *
 * Enumeration sizes are checked up front against a cap; exceeding it throws
 * CapExceeded instead of sampling.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan::oracle {

inline constexpr std::size_t kDefaultCap = 1'000'000;

namespace detail {

using Rank = int;

/// Dense rank copy of a possibilistic MDP.
struct RankMdp {
  std::size_t states = 0;
  std::size_t actions = 0;
  Rank top = 0;
  std::vector<std::vector<ActionId>> available;  // per state, ascending
  std::vector<Rank> trans;                       // [(s * actions + a) * states + next]
  std::vector<Rank> util;

  Rank poss(StateId s, ActionId a, StateId next) const { return trans[(s * actions + a) * states + next]; }
  bool can(StateId s, ActionId a) const {
    return std::find(available[s].begin(), available[s].end(), a) != available[s].end();
  }
};

inline RankMdp copy_ranks(const PiMdpModel& m) {
  RankMdp r;
  r.states = m.num_states();
  r.actions = m.num_actions();
  r.top = static_cast<Rank>(m.scale().size()) - 1;
  r.available.resize(r.states);
  r.trans.assign(r.states * r.actions * r.states, 0);
  for (StateId s = 0; s < r.states; ++s) {
    for (ActionId a = 0; a < r.actions; ++a) {
      if (!m.available(s, a)) continue;
      r.available[s].push_back(a);
      for (StateId x = 0; x < r.states; ++x) {
        r.trans[(s * r.actions + a) * r.states + x] = static_cast<Rank>(m.transition(s, a, x).rank());
      }
    }
    r.util.push_back(static_cast<Rank>(m.utility(s).rank()));
  }
  return r;
}

/// Multiplies with saturation at cap + 1.
inline std::size_t capped_product(std::size_t acc, std::size_t factor, std::size_t cap) {
  if (factor == 0) return 0;
  if (acc > (cap + 1) / factor) return cap + 1;
  return std::min(acc * factor, cap + 1);
}

}  // namespace detail

enum class Traversal { depth_first, iterative };

struct PolicyEnumeration {
  std::size_t policies = 0;
  std::vector<std::vector<Level>> values;  // values[policy][state]
  std::vector<Level> best;                 // max over policies, per state
};

/// Number of stage-indexed policies over `horizon` decision stages.
inline std::size_t count_policies(const PiMdpModel& m, std::size_t horizon, std::size_t cap = kDefaultCap) {
  std::size_t n = 1;
  for (std::size_t t = 0; t < horizon; ++t) {
    for (StateId s = 0; s < m.num_states(); ++s) n = detail::capped_product(n, m.actions(s).size(), cap);
  }
  return n;
}

/// Policy `index` as rules[t][s]. The index is mixed-radix with (t, s)
/// digits, stage 0 state 0 least significant.
inline std::vector<std::vector<ActionId>> decode_policy(const PiMdpModel& m, std::size_t horizon,
                                                        std::size_t index) {
  std::vector<std::vector<ActionId>> rules(horizon, std::vector<ActionId>(m.num_states()));
  for (std::size_t t = 0; t < horizon; ++t) {
    for (StateId s = 0; s < m.num_states(); ++s) {
      auto acts = m.actions(s);
      if (acts.empty()) throw InvalidArgument("state " + m.state_name(s) + " has no action");
      rules[t][s] = acts[index % acts.size()];
      index /= acts.size();
    }
  }
  if (index != 0) throw InvalidArgument("policy index out of range");
  return rules;
}

namespace detail {

// Depth-first over successors, skipping impossible steps (they only add the
// neutral value top).
inline Rank dfs_value(const RankMdp& r, const std::vector<std::vector<ActionId>>& rules, UtilityMode mode,
                      std::size_t t, StateId s, Rank path_poss, Rank path_util) {
  if (mode == UtilityMode::intermediate) path_util = std::min(path_util, r.util[s]);
  if (t == rules.size()) {
    Rank sat = mode == UtilityMode::intermediate ? path_util : r.util[s];
    return std::max(r.top - path_poss, sat);
  }
  Rank acc = r.top;
  ActionId a = rules[t][s];
  for (StateId x = 0; x < r.states; ++x) {
    Rank p = r.poss(s, a, x);
    if (p == 0) continue;
    acc = std::min(acc, dfs_value(r, rules, mode, t + 1, x, std::min(path_poss, p), path_util));
  }
  return acc;
}

// Odometer over every state sequence s_1..s_N, impossible ones included.
inline Rank iterative_value(const RankMdp& r, const std::vector<std::vector<ActionId>>& rules, UtilityMode mode,
                            StateId start) {
  const std::size_t n = rules.size();
  std::vector<StateId> seq(n + 1, 0);
  seq[0] = start;
  Rank acc = r.top;
  while (true) {
    Rank poss = r.top;
    Rank util = r.util[seq[0]];
    for (std::size_t t = 0; t < n; ++t) {
      poss = std::min(poss, r.poss(seq[t], rules[t][seq[t]], seq[t + 1]));
      util = std::min(util, r.util[seq[t + 1]]);
    }
    Rank sat = mode == UtilityMode::intermediate ? util : r.util[seq[n]];
    acc = std::min(acc, std::max(r.top - poss, sat));
    std::size_t i = 1;
    while (i <= n && ++seq[i] == r.states) seq[i++] = 0;
    if (i > n) break;
  }
  return acc;
}

}  // namespace detail

/// Value of every stage-indexed policy at every state, by trajectory
/// enumeration. Throws CapExceeded when the policy count exceeds `cap`.
inline PolicyEnumeration enumerate_policy_values(const PiMdpModel& m, std::size_t horizon,
                                                 UtilityMode mode = UtilityMode::terminal,
                                                 Traversal traversal = Traversal::depth_first,
                                                 std::size_t cap = kDefaultCap) {
  std::size_t count = count_policies(m, horizon, cap);
  if (count > cap) {
    throw CapExceeded("policy enumeration exceeds the cap of " + std::to_string(cap));
  }
  const detail::RankMdp r = detail::copy_ranks(m);
  const Scale& scale = m.scale();
  PolicyEnumeration out;
  out.policies = count;
  out.values.reserve(count);
  std::vector<detail::Rank> best(r.states, 0);
  for (std::size_t p = 0; p < count; ++p) {
    auto rules = decode_policy(m, horizon, p);
    std::vector<Level> row;
    row.reserve(r.states);
    for (StateId s = 0; s < r.states; ++s) {
      detail::Rank v = traversal == Traversal::depth_first
                           ? detail::dfs_value(r, rules, mode, 0, s, r.top, r.top)
                           : detail::iterative_value(r, rules, mode, s);
      best[s] = std::max(best[s], v);
      row.push_back(scale.level(static_cast<std::size_t>(v)));
    }
    out.values.push_back(std::move(row));
  }
  for (StateId s = 0; s < r.states; ++s) out.best.push_back(scale.level(static_cast<std::size_t>(best[s])));
  return out;
}

/// Observation-indexed decision tree. A leaf has no action.
struct ContingentPlan {
  std::optional<ActionId> action;
  std::vector<std::pair<ObsId, ContingentPlan>> branches;  // possible observations only

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& [o, sub] : branches) d = std::max(d, sub.depth());
    return action ? d + 1 : 0;
  }
};

struct PlanEnumeration {
  std::size_t plans = 0;
  Level best;
  ContingentPlan best_plan;
};

namespace detail {

struct RankPomdp {
  RankMdp base;
  std::size_t observations = 0;
  std::vector<Rank> obs;  // [(s * actions + a) * observations + o]

  Rank obs_poss(StateId s, ActionId a, ObsId o) const {
    return obs[(s * base.actions + a) * observations + o];
  }
};

inline RankPomdp copy_ranks(const PiPomdpModel& m) {
  RankPomdp r;
  r.base = copy_ranks(m.base());
  r.observations = m.num_observations();
  for (StateId s = 0; s < r.base.states; ++s) {
    for (ActionId a = 0; a < r.base.actions; ++a) {
      for (ObsId o = 0; o < r.observations; ++o) {
        r.obs.push_back(static_cast<Rank>(m.observation(s, a, o).rank()));
      }
    }
  }
  return r;
}

using RankBelief = std::vector<Rank>;

inline std::vector<ActionId> belief_actions(const RankMdp& r, const RankBelief& b) {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < r.actions; ++a) {
    for (StateId s = 0; s < r.states; ++s) {
      if (b[s] > 0 && r.can(s, a)) {
        out.push_back(a);
        break;
      }
    }
  }
  return out;
}

inline RankBelief predicted(const RankMdp& r, const RankBelief& b, ActionId a) {
  RankBelief out(r.states, 0);
  for (StateId to = 0; to < r.states; ++to) {
    for (StateId from = 0; from < r.states; ++from) {
      Rank step = r.can(from, a) ? r.poss(from, a, to) : (from == to ? r.top : 0);
      out[to] = std::max(out[to], std::min(step, b[from]));
    }
  }
  return out;
}

inline Rank belief_util(const RankMdp& r, const RankBelief& b) {
  Rank acc = r.top;
  for (StateId s = 0; s < r.states; ++s) acc = std::min(acc, std::max(r.top - b[s], r.util[s]));
  return acc;
}

struct Branch {
  ObsId obs;
  Rank poss;
  RankBelief next;
};

// Possible observations after a, with the min-conditioned successor beliefs.
inline std::vector<Branch> branches(const RankPomdp& r, const RankBelief& b, ActionId a) {
  RankBelief pred = predicted(r.base, b, a);
  std::vector<Branch> out;
  for (ObsId o = 0; o < r.observations; ++o) {
    RankBelief joint(r.base.states);
    Rank total = 0;
    for (StateId s = 0; s < r.base.states; ++s) {
      joint[s] = std::min(r.obs_poss(s, a, o), pred[s]);
      total = std::max(total, joint[s]);
    }
    if (total == 0) continue;
    for (auto& v : joint) {
      if (v == total) v = r.base.top;
    }
    out.push_back({o, total, std::move(joint)});
  }
  return out;
}

inline std::size_t count_plans(const RankPomdp& r, const RankBelief& b, std::size_t depth, std::size_t cap) {
  if (depth == 0) return 1;
  std::size_t total = 0;
  for (ActionId a : belief_actions(r.base, b)) {
    std::size_t n = 1;
    for (const auto& br : branches(r, b, a)) n = capped_product(n, count_plans(r, br.next, depth - 1, cap), cap);
    total = std::min(total + n, cap + 1);
  }
  return total;
}

inline std::vector<ContingentPlan> all_plans(const RankPomdp& r, const RankBelief& b, std::size_t depth) {
  if (depth == 0) return {ContingentPlan{}};
  std::vector<ContingentPlan> out;
  for (ActionId a : belief_actions(r.base, b)) {
    auto brs = branches(r, b, a);
    std::vector<std::vector<ContingentPlan>> options;
    for (const auto& br : brs) options.push_back(all_plans(r, br.next, depth - 1));
    std::vector<std::size_t> pick(brs.size(), 0);
    while (true) {
      ContingentPlan p;
      p.action = a;
      for (std::size_t i = 0; i < brs.size(); ++i) p.branches.emplace_back(brs[i].obs, options[i][pick[i]]);
      out.push_back(std::move(p));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
    }
  }
  return out;
}

inline Rank plan_value(const RankPomdp& r, const RankBelief& b, const ContingentPlan& plan, UtilityMode mode) {
  Rank here = belief_util(r.base, b);
  if (!plan.action) return here;
  Rank acc = r.base.top;
  for (const auto& br : branches(r, b, *plan.action)) {
    auto it = std::find_if(plan.branches.begin(), plan.branches.end(),
                           [&](const auto& entry) { return entry.first == br.obs; });
    if (it == plan.branches.end()) throw InvalidArgument("plan misses a possible observation");
    acc = std::min(acc, std::max(r.base.top - br.poss, plan_value(r, br.next, it->second, mode)));
  }
  return mode == UtilityMode::intermediate ? std::min(here, acc) : acc;
}

}  // namespace detail

/// Best value over every contingent plan of exactly `horizon` decisions from
/// `initial`. Ties keep the first plan in enumeration order.
inline PlanEnumeration enumerate_plan_values(const PiPomdpModel& m, std::span<const Level> initial,
                                             std::size_t horizon, UtilityMode mode = UtilityMode::terminal,
                                             std::size_t cap = kDefaultCap) {
  if (initial.size() != m.num_states()) throw InvalidArgument("belief size does not match the model");
  const detail::RankPomdp r = detail::copy_ranks(m);
  detail::RankBelief b;
  for (Level x : initial) {
    if (!m.scale().owns(x)) throw ScaleMismatch("belief is not on the model's scale");
    b.push_back(static_cast<detail::Rank>(x.rank()));
  }
  if (*std::max_element(b.begin(), b.end()) != r.base.top) throw InvalidArgument("initial belief is not normalized");
  std::size_t count = detail::count_plans(r, b, horizon, cap);
  if (count > cap) throw CapExceeded("plan enumeration exceeds the cap of " + std::to_string(cap));
  auto plans = detail::all_plans(r, b, horizon);
  PlanEnumeration out{plans.size(), m.scale().bottom(), {}};
  detail::Rank best = -1;
  for (auto& p : plans) {
    detail::Rank v = detail::plan_value(r, b, p, mode);
    if (v > best) {
      best = v;
      out.best_plan = p;
    }
  }
  out.best = m.scale().level(static_cast<std::size_t>(best));
  return out;
}

struct StochPolicyEnumeration {
  std::size_t policies = 0;
  std::vector<std::vector<double>> values;  // values[policy][state]
  std::vector<double> best;
};

/// Expected reward sum over stages 0..horizon of every stage-indexed policy,
/// by probability-weighted trajectory enumeration.
inline StochPolicyEnumeration enumerate_stoch_policy_values(const StochMdpModel& m, std::size_t horizon,
                                                            std::size_t cap = kDefaultCap) {
  const std::size_t stages = horizon + 1;
  const std::size_t n = m.num_states();
  std::vector<std::vector<ActionId>> avail(n);
  std::size_t count = 1;
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < m.num_actions(); ++a) {
      if (m.available(s, a)) avail[s].push_back(a);
    }
    if (avail[s].empty()) throw InvalidArgument("state " + m.state_name(s) + " has no action");
    for (std::size_t t = 0; t < stages; ++t) count = detail::capped_product(count, avail[s].size(), cap);
  }
  if (count > cap) throw CapExceeded("policy enumeration exceeds the cap of " + std::to_string(cap));

  StochPolicyEnumeration out;
  out.policies = count;
  out.best.assign(n, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<ActionId>> rules(stages, std::vector<ActionId>(n));
  for (std::size_t p = 0; p < count; ++p) {
    std::size_t code = p;
    for (std::size_t t = 0; t < stages; ++t) {
      for (StateId s = 0; s < n; ++s) {
        rules[t][s] = avail[s][code % avail[s].size()];
        code /= avail[s].size();
      }
    }
    std::vector<double> row(n, 0.0);
    for (StateId start = 0; start < n; ++start) {
      // Stack of (stage, state, path probability).
      struct Node {
        std::size_t t;
        StateId s;
        double w;
      };
      std::vector<Node> stack{{0, start, 1.0}};
      double total = 0.0;
      while (!stack.empty()) {
        Node node = stack.back();
        stack.pop_back();
        ActionId a = rules[node.t][node.s];
        total += node.w * m.reward(node.s, a);
        if (node.t + 1 == stages) continue;
        for (StateId x = 0; x < n; ++x) {
          double p = m.probability(node.s, a, x);
          if (p > 0.0) stack.push_back({node.t + 1, x, node.w * p});
        }
      }
      row[start] = total;
      out.best[start] = std::max(out.best[start], total);
    }
    out.values.push_back(std::move(row));
  }
  return out;
}

/// Discounted value of a stationary policy by iterative evaluation, stopped
/// once the remaining error bound drops below `tolerance`.
inline std::vector<double> evaluate_stationary_stoch_policy(const StochMdpModel& m, std::span<const ActionId> policy,
                                                            double tolerance = 1e-10) {
  const double gamma = m.discount();
  if (gamma >= 1.0) throw InvalidArgument("policy evaluation needs a discount below 1");
  if (policy.size() != m.num_states()) throw InvalidArgument("policy must assign an action to every state");
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (!m.available(s, policy[s])) throw InvalidArgument("policy action unavailable in state " + m.state_name(s));
  }
  const double stop = tolerance * (1.0 - gamma) / gamma;
  std::vector<double> v(m.num_states(), 0.0);
  while (true) {
    std::vector<double> next(m.num_states(), 0.0);
    double gap = 0.0;
    for (StateId s = 0; s < m.num_states(); ++s) {
      double acc = 0.0;
      for (StateId x = 0; x < m.num_states(); ++x) acc += m.probability(s, policy[s], x) * v[x];
      next[s] = m.reward(s, policy[s]) + gamma * acc;
      gap = std::max(gap, std::abs(next[s] - v[s]));
    }
    v = std::move(next);
    if (gap < stop) break;
  }
  return v;
}

}  // namespace qualplan::oracle
