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
 * @file belief.hpp
 * @brief Possibilistic belief states and min-based revision.
 *
 * A belief is a normalized possibility distribution over states. After
 * action a the predicted belief and the observation possibilities are
 *
 *   b_a(s) = max_{s'} min(pi(s|s',a), b(s'))
 *   b_a(o) = max_s    min(pi(o|s,a), b_a(s))
 *
 * and observing o revises b_a by min-based conditioning of the joint
 * j(s) = min(pi(o|s,a), b_a(s)): states with j(s) = b_a(o) rise to the top
 * level, every other state keeps j(s). States with pi(o|s,a) = 0 drop out.
 *
 * An action that is not available in some state of the support acts as a
 * no-op there, which keeps predictions normalized.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

class Belief {
 public:
  /// Throws ScaleMismatch when the levels span several scales.
  explicit Belief(std::vector<Level> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidArgument("a belief needs at least one state");
    for (Level x : values_) {
      if (!x.same_scale(values_.front())) throw ScaleMismatch("belief mixes scales");
    }
  }

  /// Total ignorance: every state fully possible.
  static Belief ignorance(const Scale& scale, std::size_t states) {
    return Belief(std::vector<Level>(states, scale.top()));
  }

  static Belief crisp(const Scale& scale, std::size_t states, StateId s) {
    return crisp(scale, states, std::vector<StateId>{s});
  }

  /// Top on `support`, bottom elsewhere.
  static Belief crisp(const Scale& scale, std::size_t states, std::span<const StateId> support) {
    std::vector<Level> v(states, scale.bottom());
    for (StateId s : support) v.at(s) = scale.top();
    return Belief(std::move(v));
  }

  std::size_t size() const noexcept { return values_.size(); }
  Level operator[](StateId s) const { return values_.at(s); }
  std::span<const Level> values() const noexcept { return values_; }

  bool normalized() const noexcept {
    for (Level x : values_) {
      if (x.is_top()) return true;
    }
    return false;
  }

  /// States with non-bottom possibility.
  std::vector<StateId> support() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < values_.size(); ++s) {
      if (!values_[s].is_bottom()) out.push_back(s);
    }
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = values_.front().scale_tag();
    for (Level x : values_) h = h * 1000003u + x.rank();
    return h;
  }

  friend bool operator==(const Belief& a, const Belief& b) { return a.values_ == b.values_; }

 private:
  std::vector<Level> values_;
};

struct BeliefHash {
  std::size_t operator()(const Belief& b) const noexcept { return b.hash(); }
};

/// Renders "{s21:1,s32:0.5}", omitting bottom entries.
inline std::string format_belief(const PiPomdpModel& m, const Belief& b) {
  std::string out = "{";
  bool first = true;
  for (StateId s = 0; s < b.size(); ++s) {
    if (b[s].is_bottom()) continue;
    if (!first) out += ',';
    first = false;
    out += m.base().state_name(s) + ":" + m.scale().label(b[s]);
  }
  return out + "}";
}

/// Possibility of each (state, observation) pair.
class JointDistribution {
 public:
  JointDistribution(const Scale& scale, std::size_t states, std::size_t observations)
      : states_(states), observations_(observations), values_(states * observations, scale.bottom()) {}

  std::size_t num_states() const noexcept { return states_; }
  std::size_t num_observations() const noexcept { return observations_; }

  void set(StateId s, ObsId o, Level v) {
    if (!v.same_scale(values_.front())) throw ScaleMismatch("joint distribution mixes scales");
    values_.at(s * observations_ + o) = v;
  }
  Level operator()(StateId s, ObsId o) const { return values_.at(s * observations_ + o); }

  /// Pi(o) = max_s pi(s, o).
  Level marginal(ObsId o) const {
    Level acc = values_.at(o);
    for (StateId s = 1; s < states_; ++s) acc = join(acc, (*this)(s, o));
    return acc;
  }

 private:
  std::size_t states_;
  std::size_t observations_;
  std::vector<Level> values_;
};

/// Minimum-specificity solution of Pi(s, o) = min(pi(s|o), Pi(o)): states
/// achieving Pi(o) get the top level, the others keep pi(s, o).
inline std::vector<Level> condition(const JointDistribution& joint, ObsId o) {
  Level total = joint.marginal(o);
  if (total.is_bottom()) throw ImpossibleObservation("conditioning on an impossible observation");
  std::vector<Level> out;
  out.reserve(joint.num_states());
  for (StateId s = 0; s < joint.num_states(); ++s) {
    Level v = joint(s, o);
    out.push_back(v == total ? top_of(total) : v);
  }
  return out;
}

namespace detail {

inline void check_belief(const PiPomdpModel& m, const Belief& b) {
  if (b.size() != m.num_states()) throw InvalidArgument("belief size does not match the model");
  if (!m.scale().owns(b[0])) throw ScaleMismatch("belief is not on the model's scale");
}

}  // namespace detail

/// A_b: actions available in at least one state of the support.
inline std::vector<ActionId> available_actions(const PiPomdpModel& m, const Belief& b) {
  detail::check_belief(m, b);
  std::vector<char> seen(m.num_actions(), 0);
  for (StateId s = 0; s < b.size(); ++s) {
    if (b[s].is_bottom()) continue;
    for (ActionId a : m.base().actions(s)) seen[a] = 1;
  }
  std::vector<ActionId> out;
  for (ActionId a = 0; a < m.num_actions(); ++a) {
    if (seen[a]) out.push_back(a);
  }
  return out;
}

inline Belief predict(const PiPomdpModel& m, const Belief& b, ActionId a) {
  detail::check_belief(m, b);
  if (a >= m.num_actions()) throw InvalidArgument("action index out of range");
  const auto& base = m.base();
  std::vector<Level> out(m.num_states(), m.scale().bottom());
  bool usable = false;
  for (StateId from = 0; from < m.num_states(); ++from) {
    Level prior = b[from];
    if (prior.is_bottom()) continue;
    if (!base.available(from, a)) {
      out[from] = join(out[from], prior);
      continue;
    }
    usable = true;
    auto row = base.row(from, a);
    for (StateId to = 0; to < m.num_states(); ++to) out[to] = join(out[to], meet(row[to], prior));
  }
  if (!usable) {
    throw InvalidArgument("action " + base.action_name(a) + " is unavailable in every possible state");
  }
  return Belief(std::move(out));
}

/// b_a(o): also the possibility of moving to the revised belief.
inline Level observation_possibility(const PiPomdpModel& m, const Belief& predicted, ActionId a, ObsId o) {
  detail::check_belief(m, predicted);
  Level acc = m.scale().bottom();
  for (StateId s = 0; s < m.num_states(); ++s) acc = join(acc, meet(m.observation(s, a, o), predicted[s]));
  return acc;
}

inline Belief revise(const PiPomdpModel& m, const Belief& predicted, ActionId a, ObsId o) {
  detail::check_belief(m, predicted);
  JointDistribution joint(m.scale(), m.num_states(), 1);
  for (StateId s = 0; s < m.num_states(); ++s) joint.set(s, 0, meet(m.observation(s, a, o), predicted[s]));
  if (joint.marginal(0).is_bottom()) {
    throw ImpossibleObservation("observation " + m.observation_name(o) + " is impossible after action " +
                                m.base().action_name(a));
  }
  return Belief(condition(joint, 0));
}

/// mu(b) = min_s max(neg(b(s)), mu(s)).
inline Level belief_utility(const PiPomdpModel& m, const Belief& b) {
  detail::check_belief(m, b);
  Level acc = m.scale().top();
  for (StateId s = 0; s < m.num_states(); ++s) acc = meet(acc, join(neg(b[s]), m.base().utility(s)));
  return acc;
}

}  // namespace qualplan
