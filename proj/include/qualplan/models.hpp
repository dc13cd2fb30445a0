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
 * @file models.hpp
 * @brief Possibilistic MDP/POMDP and stochastic MDP data models.
 *
 * Models are filled in through setters and then checked by validate().
 * Solvers call require_valid() and refuse to run on a model with violations.
 * Tables are dense: trans(s, a, s') for every triple, with unavailable
 * actions kept at bottom/zero and ignored.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

using StateId = std::size_t;
using ActionId = std::size_t;
using ObsId = std::size_t;

/// Whether the satisfaction of a trajectory is the utility of its last state
/// (terminal) or the minimum utility over all visited states (intermediate).
enum class UtilityMode { terminal, intermediate };

inline std::string_view to_string(UtilityMode m) {
  return m == UtilityMode::terminal ? "terminal" : "intermediate";
}

/// Finite (N >= 1 steps) or infinite horizon.
class Horizon {
 public:
  static Horizon finite(std::size_t steps) {
    if (steps == 0) throw InvalidArgument("a finite horizon needs at least one step");
    return Horizon(steps);
  }
  static Horizon infinite() { return Horizon(std::nullopt); }

  bool is_finite() const noexcept { return steps_.has_value(); }
  std::size_t steps() const {
    if (!steps_) throw InvalidArgument("infinite horizon has no step count");
    return *steps_;
  }

 private:
  explicit Horizon(std::optional<std::size_t> steps) : steps_(steps) {}
  std::optional<std::size_t> steps_;
};

struct Violation {
  std::optional<StateId> state;
  std::optional<ActionId> action;
  std::string what;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

class NamedIndex {
 public:
  NamedIndex() = default;
  explicit NamedIndex(std::vector<std::string> names, std::string_view kind) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw InvalidArgument("empty " + std::string(kind) + " name");
      if (!index_.emplace(names_[i], i).second) {
        throw InvalidArgument("duplicate " + std::string(kind) + " name '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const NamedIndex& a, const NamedIndex& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Per-state sorted action lists over a global action set.
class Availability {
 public:
  Availability() = default;
  Availability(std::size_t states, std::size_t actions)
      : actions_(actions), enabled_(states * actions, 0), lists_(states) {}

  void enable(StateId s, ActionId a) {
    if (enabled_[s * actions_ + a]) return;
    enabled_[s * actions_ + a] = 1;
    auto& list = lists_[s];
    list.insert(std::upper_bound(list.begin(), list.end(), a), a);
  }
  bool available(StateId s, ActionId a) const { return enabled_[s * actions_ + a] != 0; }
  std::span<const ActionId> actions(StateId s) const { return lists_[s]; }

  friend bool operator==(const Availability& a, const Availability& b) { return a.lists_ == b.lists_; }

 private:
  std::size_t actions_ = 0;
  std::vector<char> enabled_;
  std::vector<std::vector<ActionId>> lists_;
};

}  // namespace detail

/// Fully observable possibilistic MDP: pi(s'|s,a) and mu(s) on one scale.
class PiMdpModel {
 public:
  PiMdpModel(Scale scale, std::vector<std::string> states, std::vector<std::string> actions)
      : scale_(std::move(scale)),
        states_(std::move(states), "state"),
        actions_(std::move(actions), "action"),
        avail_(states_.size(), actions_.size()),
        trans_(states_.size() * actions_.size() * states_.size(), scale_.bottom()),
        util_(states_.size(), scale_.bottom()) {
    if (states_.size() == 0) throw InvalidArgument("a model needs at least one state");
    if (actions_.size() == 0) throw InvalidArgument("a model needs at least one action");
  }

  const Scale& scale() const noexcept { return scale_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_actions() const noexcept { return actions_.size(); }

  const std::string& state_name(StateId s) const { return states_.name(s); }
  const std::string& action_name(ActionId a) const { return actions_.name(a); }
  const std::vector<std::string>& state_names() const noexcept { return states_.names(); }
  const std::vector<std::string>& action_names() const noexcept { return actions_.names(); }
  std::optional<StateId> find_state(std::string_view name) const { return states_.find(name); }
  std::optional<ActionId> find_action(std::string_view name) const { return actions_.find(name); }

  /// Adds a to A_s. Its transition row starts at bottom everywhere.
  void enable(StateId s, ActionId a) {
    check(s, a);
    avail_.enable(s, a);
  }
  bool available(StateId s, ActionId a) const {
    check(s, a);
    return avail_.available(s, a);
  }
  std::span<const ActionId> actions(StateId s) const {
    check_state(s);
    return avail_.actions(s);
  }

  /// Sets pi(next|s,a) and enables a in s.
  void set_transition(StateId s, ActionId a, StateId next, Level poss) {
    check(s, a);
    check_state(next);
    check_level(poss);
    avail_.enable(s, a);
    trans_[(s * num_actions() + a) * num_states() + next] = poss;
  }
  Level transition(StateId s, ActionId a, StateId next) const {
    check(s, a);
    check_state(next);
    return trans_[(s * num_actions() + a) * num_states() + next];
  }
  /// pi(.|s,a) over all successor states.
  std::span<const Level> row(StateId s, ActionId a) const {
    check(s, a);
    return std::span<const Level>(trans_).subspan((s * num_actions() + a) * num_states(),
                                                  num_states());
  }

  void set_utility(StateId s, Level u) {
    check_state(s);
    check_level(u);
    util_[s] = u;
  }
  Level utility(StateId s) const {
    check_state(s);
    return util_[s];
  }
  std::span<const Level> utilities() const noexcept { return util_; }

  friend bool operator==(const PiMdpModel& a, const PiMdpModel& b) {
    return a.scale_ == b.scale_ && a.states_ == b.states_ && a.actions_ == b.actions_ &&
           a.avail_ == b.avail_ && a.trans_ == b.trans_ && a.util_ == b.util_;
  }

 private:
  void check_state(StateId s) const {
    if (s >= num_states()) throw InvalidArgument("state index " + std::to_string(s) + " out of range");
  }
  void check(StateId s, ActionId a) const {
    check_state(s);
    if (a >= num_actions()) throw InvalidArgument("action index " + std::to_string(a) + " out of range");
  }
  void check_level(Level x) const {
    if (!scale_.owns(x)) throw ScaleMismatch("level is not on the model's scale");
  }

  Scale scale_;
  detail::NamedIndex states_;
  detail::NamedIndex actions_;
  detail::Availability avail_;
  std::vector<Level> trans_;
  std::vector<Level> util_;
};

/// Partially observable possibilistic MDP. obs(s, a, o) = pi(o|s,a) is the
/// possibility of observing o when a has been applied and s is the state
/// reached.
class PiPomdpModel {
 public:
  PiPomdpModel(PiMdpModel base, std::vector<std::string> observations)
      : base_(std::move(base)),
        obs_names_(std::move(observations), "observation"),
        obs_(base_.num_states() * base_.num_actions() * obs_names_.size(), base_.scale().bottom()) {
    if (obs_names_.size() == 0) throw InvalidArgument("a POMDP needs at least one observation");
  }

  const PiMdpModel& base() const noexcept { return base_; }
  PiMdpModel& base() noexcept { return base_; }
  const Scale& scale() const noexcept { return base_.scale(); }
  std::size_t num_states() const noexcept { return base_.num_states(); }
  std::size_t num_actions() const noexcept { return base_.num_actions(); }
  std::size_t num_observations() const noexcept { return obs_names_.size(); }

  const std::string& observation_name(ObsId o) const { return obs_names_.name(o); }
  const std::vector<std::string>& observation_names() const noexcept { return obs_names_.names(); }
  std::optional<ObsId> find_observation(std::string_view name) const { return obs_names_.find(name); }

  void set_observation(StateId s, ActionId a, ObsId o, Level poss) {
    check(s, a, o);
    if (!scale().owns(poss)) throw ScaleMismatch("level is not on the model's scale");
    obs_[index(s, a, o)] = poss;
  }
  Level observation(StateId s, ActionId a, ObsId o) const {
    check(s, a, o);
    return obs_[index(s, a, o)];
  }
  /// pi(.|s,a) over all observations.
  std::span<const Level> observation_row(StateId s, ActionId a) const {
    check(s, a, 0);
    return std::span<const Level>(obs_).subspan(index(s, a, 0), num_observations());
  }

  friend bool operator==(const PiPomdpModel& a, const PiPomdpModel& b) {
    return a.base_ == b.base_ && a.obs_names_ == b.obs_names_ && a.obs_ == b.obs_;
  }

 private:
  std::size_t index(StateId s, ActionId a, ObsId o) const {
    return (s * num_actions() + a) * num_observations() + o;
  }
  void check(StateId s, ActionId a, ObsId o) const {
    if (s >= num_states() || a >= num_actions() || o >= num_observations()) {
      throw InvalidArgument("observation table index out of range");
    }
  }

  PiMdpModel base_;
  detail::NamedIndex obs_names_;
  std::vector<Level> obs_;
};

/// Classical MDP: p(s'|s,a), r(s,a), discount.
class StochMdpModel {
 public:
  StochMdpModel(std::vector<std::string> states, std::vector<std::string> actions, double discount = 1.0)
      : states_(std::move(states), "state"),
        actions_(std::move(actions), "action"),
        avail_(states_.size(), actions_.size()),
        prob_(states_.size() * actions_.size() * states_.size(), 0.0),
        reward_(states_.size() * actions_.size(), 0.0),
        discount_(discount) {
    if (states_.size() == 0) throw InvalidArgument("a model needs at least one state");
    if (actions_.size() == 0) throw InvalidArgument("a model needs at least one action");
  }

  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_actions() const noexcept { return actions_.size(); }
  const std::string& state_name(StateId s) const { return states_.name(s); }
  const std::string& action_name(ActionId a) const { return actions_.name(a); }
  const std::vector<std::string>& state_names() const noexcept { return states_.names(); }
  const std::vector<std::string>& action_names() const noexcept { return actions_.names(); }
  std::optional<StateId> find_state(std::string_view name) const { return states_.find(name); }
  std::optional<ActionId> find_action(std::string_view name) const { return actions_.find(name); }

  double discount() const noexcept { return discount_; }
  void set_discount(double gamma) { discount_ = gamma; }

  void enable(StateId s, ActionId a) {
    check(s, a);
    avail_.enable(s, a);
  }
  bool available(StateId s, ActionId a) const {
    check(s, a);
    return avail_.available(s, a);
  }
  std::span<const ActionId> actions(StateId s) const {
    check(s, 0);
    return avail_.actions(s);
  }

  void set_probability(StateId s, ActionId a, StateId next, double p) {
    check(s, a);
    check(next, 0);
    avail_.enable(s, a);
    prob_[(s * num_actions() + a) * num_states() + next] = p;
  }
  double probability(StateId s, ActionId a, StateId next) const {
    check(s, a);
    check(next, 0);
    return prob_[(s * num_actions() + a) * num_states() + next];
  }
  std::span<const double> row(StateId s, ActionId a) const {
    check(s, a);
    return std::span<const double>(prob_).subspan((s * num_actions() + a) * num_states(), num_states());
  }

  void set_reward(StateId s, ActionId a, double r) {
    check(s, a);
    avail_.enable(s, a);
    reward_[s * num_actions() + a] = r;
  }
  double reward(StateId s, ActionId a) const {
    check(s, a);
    return reward_[s * num_actions() + a];
  }

  friend bool operator==(const StochMdpModel& a, const StochMdpModel& b) {
    return a.states_ == b.states_ && a.actions_ == b.actions_ && a.avail_ == b.avail_ &&
           a.prob_ == b.prob_ && a.reward_ == b.reward_ && a.discount_ == b.discount_;
  }

 private:
  void check(StateId s, ActionId a) const {
    if (s >= num_states() || a >= num_actions()) throw InvalidArgument("model index out of range");
  }

  detail::NamedIndex states_;
  detail::NamedIndex actions_;
  detail::Availability avail_;
  std::vector<double> prob_;
  std::vector<double> reward_;
  double discount_;
};

/// Tolerance on the row sums of stochastic transition tables.
inline constexpr double kProbabilityTolerance = 1e-9;

/// |sum - 1| <= tolerance, with slack for the rounding of the sum itself
/// (1 - 0.999999999 evaluates to slightly more than 1e-9).
inline bool sums_to_one(double sum) noexcept { return std::abs(sum - 1.0) <= kProbabilityTolerance + 1e-15; }

inline ValidationReport validate(const PiMdpModel& m) {
  ValidationReport report;
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (m.actions(s).empty()) {
      report.violations.push_back({s, std::nullopt, "state has no available action"});
    }
    for (ActionId a : m.actions(s)) {
      bool normalized = false;
      for (Level p : m.row(s, a)) normalized = normalized || p.is_top();
      if (!normalized) {
        report.violations.push_back({s, a, "transition possibilities do not reach the top level"});
      }
    }
  }
  return report;
}

inline ValidationReport validate(const PiPomdpModel& m) {
  ValidationReport report = validate(m.base());
  for (StateId s = 0; s < m.num_states(); ++s) {
    for (ActionId a = 0; a < m.num_actions(); ++a) {
      bool normalized = false;
      for (Level p : m.observation_row(s, a)) normalized = normalized || p.is_top();
      if (!normalized) {
        report.violations.push_back({s, a, "observation possibilities do not reach the top level"});
      }
    }
  }
  return report;
}

inline ValidationReport validate(const StochMdpModel& m) {
  ValidationReport report;
  if (!(m.discount() > 0.0 && m.discount() <= 1.0)) {
    report.violations.push_back({std::nullopt, std::nullopt, "discount must lie in (0, 1]"});
  }
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (m.actions(s).empty()) {
      report.violations.push_back({s, std::nullopt, "state has no available action"});
    }
    for (ActionId a : m.actions(s)) {
      double sum = 0.0;
      bool in_range = true;
      for (double p : m.row(s, a)) {
        in_range = in_range && p >= 0.0 && p <= 1.0;
        sum += p;
      }
      if (!in_range) report.violations.push_back({s, a, "probability outside [0, 1]"});
      if (!sums_to_one(sum)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "transition probabilities sum to " << sum;
        report.violations.push_back({s, a, msg.str()});
      }
      if (!std::isfinite(m.reward(s, a))) report.violations.push_back({s, a, "reward is not finite"});
    }
  }
  return report;
}

/// Renders violations with state/action names.
template <typename Model>
std::vector<std::string> describe(const Model& m, const ValidationReport& report) {
  std::vector<std::string> out;
  for (const auto& v : report.violations) {
    std::string line;
    if (v.state) line += "state " + m.state_name(*v.state);
    if (v.action) line += (line.empty() ? "action " : ", action ") + m.action_name(*v.action);
    if (!line.empty()) line += ": ";
    out.push_back(line + v.what);
  }
  return out;
}

inline std::vector<std::string> describe(const PiPomdpModel& m, const ValidationReport& report) {
  return describe(m.base(), report);
}

template <typename Model>
void require_valid(const Model& m) {
  auto report = validate(m);
  if (!report.ok()) throw InvalidModel(describe(m, report));
}

}  // namespace qualplan
