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

// Expected-reward baseline: finite-horizon backwards induction, discounted
// value iteration, and Bayesian belief bookkeeping for comparison with the
// possibilistic solvers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"

namespace qualplan {

namespace detail {

inline double q_value(const StochMdpModel& m, StateId s, ActionId a, std::span<const double> next, double gamma) {
  double acc = 0.0;
  auto row = m.row(s, a);
  for (StateId x = 0; x < row.size(); ++x) acc += row[x] * next[x];
  return m.reward(s, a) + gamma * acc;
}

}  // namespace detail

struct StochFiniteSolution {
  std::vector<std::vector<double>> values;  // values[t], t = 0..N+1; values[N+1] = 0
  std::vector<std::vector<ActionId>> policy;  // policy[t], t = 0..N
};

/// Maximizes the expected reward sum over stages 0..N (N+1 decisions). The
/// last stage backs up against a zero continuation, so v^N(s) = max_a r(s,a).
inline StochFiniteSolution backwards_induction_stoch(const StochMdpModel& m, std::size_t horizon) {
  require_valid(m);
  StochFiniteSolution out;
  out.values.assign(horizon + 2, std::vector<double>(m.num_states(), 0.0));
  out.policy.assign(horizon + 1, std::vector<ActionId>(m.num_states(), 0));
  for (std::size_t t = horizon + 1; t-- > 0;) {
    for (StateId s = 0; s < m.num_states(); ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (ActionId a : m.actions(s)) {
        double v = detail::q_value(m, s, a, out.values[t + 1], 1.0);
        if (v > best) {
          best = v;
          out.policy[t][s] = a;
        }
      }
      out.values[t][s] = best;
    }
  }
  return out;
}

struct StochStationarySolution {
  std::vector<std::vector<double>> q;  // q[s][a]; -inf where a is unavailable
  std::vector<double> values;
  std::vector<ActionId> policy;
  std::size_t iterations = 0;
  std::vector<double> gaps;  // sup-norm distance between successive iterates
};

inline constexpr double kDefaultEpsilon = 1e-6;

/// Iterates from v = 0 until ||v_{k+1} - v_k|| < epsilon (1 - gamma) / (2 gamma);
/// the result is then within epsilon / 2 of the optimum, and the greedy policy
/// is epsilon-optimal.
inline StochStationarySolution value_iteration_stoch(const StochMdpModel& m, double epsilon = kDefaultEpsilon) {
  require_valid(m);
  const double gamma = m.discount();
  if (gamma >= 1.0) throw InvalidArgument("value iteration needs a discount below 1");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double threshold = epsilon * (1.0 - gamma) / (2.0 * gamma);

  StochStationarySolution out;
  std::vector<double> v(m.num_states(), 0.0);
  std::vector<double> next(m.num_states(), 0.0);
  auto greedy = [&](std::span<const double> from) {
    out.q.assign(m.num_states(), std::vector<double>(m.num_actions(), -std::numeric_limits<double>::infinity()));
    out.policy.assign(m.num_states(), 0);
    for (StateId s = 0; s < m.num_states(); ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (ActionId a : m.actions(s)) {
        double q = detail::q_value(m, s, a, from, gamma);
        out.q[s][a] = q;
        if (q > best) {
          best = q;
          out.policy[s] = a;
        }
      }
      next[s] = best;
    }
  };
  while (true) {
    greedy(v);
    ++out.iterations;
    double gap = 0.0;
    for (StateId s = 0; s < m.num_states(); ++s) gap = std::max(gap, std::abs(next[s] - v[s]));
    out.gaps.push_back(gap);
    std::swap(v, next);
    if (gap < threshold) break;
  }
  greedy(v);  // Q and policy consistent with the returned values
  out.values = v;
  return out;
}

/// Non-negative per-state weights summing to one.
class ProbBelief {
 public:
  explicit ProbBelief(std::vector<double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw InvalidArgument("belief weights must be non-negative");
      sum += w;
    }
    if (!sums_to_one(sum)) throw InvalidArgument("belief weights must sum to 1");
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](StateId s) const { return weights_.at(s); }
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  std::vector<double> weights_;
};

/// p(o|s,a): probability of observing o when a led to s.
class ProbObservationModel {
 public:
  ProbObservationModel(std::size_t states, std::size_t actions, std::size_t observations)
      : states_(states), actions_(actions), observations_(observations),
        table_(states * actions * observations, 0.0) {}

  std::size_t num_observations() const noexcept { return observations_; }

  void set(StateId s, ActionId a, ObsId o, double p) { table_.at(index(s, a, o)) = p; }
  double operator()(StateId s, ActionId a, ObsId o) const { return table_.at(index(s, a, o)); }

 private:
  std::size_t index(StateId s, ActionId a, ObsId o) const {
    if (s >= states_ || a >= actions_ || o >= observations_) throw InvalidArgument("observation index out of range");
    return (s * actions_ + a) * observations_ + o;
  }

  std::size_t states_;
  std::size_t actions_;
  std::size_t observations_;
  std::vector<double> table_;
};

struct ProbBeliefUpdate {
  std::vector<double> predicted;  // b_a
  double observation_probability;  // b_a(o)
  ProbBelief revised;             // b_a^o
};

/// Forward prediction b_a(s) = sum_{s'} p(s|s',a) b(s') followed by Bayes
/// conditioning on o. Where a is unavailable it leaves the state unchanged.
inline ProbBeliefUpdate prob_belief_update(const StochMdpModel& m, const ProbObservationModel& obs,
                                           const ProbBelief& b, ActionId a, ObsId o) {
  if (b.size() != m.num_states()) throw InvalidArgument("belief size does not match the model");
  std::vector<double> predicted(m.num_states(), 0.0);
  for (StateId from = 0; from < m.num_states(); ++from) {
    if (b[from] == 0.0) continue;
    if (!m.available(from, a)) {
      predicted[from] += b[from];
      continue;
    }
    auto row = m.row(from, a);
    for (StateId to = 0; to < m.num_states(); ++to) predicted[to] += row[to] * b[from];
  }
  double total = 0.0;
  for (StateId s = 0; s < m.num_states(); ++s) total += obs(s, a, o) * predicted[s];
  if (total == 0.0) throw ImpossibleObservation("observation has zero probability");
  std::vector<double> revised(m.num_states());
  for (StateId s = 0; s < m.num_states(); ++s) revised[s] = obs(s, a, o) * predicted[s] / total;
  return ProbBeliefUpdate{std::move(predicted), total, ProbBelief(std::move(revised))};
}

}  // namespace qualplan
