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
 * @file trace.hpp
 * @brief Solver outputs shared by every solver, and the line-oriented trace
 * format
 *
 *     sweep=<k> state=<id> value=<label> actions={<a>,<b>,...}
 *
 * Sweep 0 is the initialization and carries an empty action set.
 */

#include <algorithm>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

using ValueFunction = std::vector<Level>;

/// Optimal action sets plus one representative per state.
struct PolicySet {
  std::vector<std::vector<ActionId>> optimal;
  std::vector<ActionId> chosen;
};

/// Q(s, a) for the available pairs. Rows are states (or beliefs).
class QTable {
 public:
  QTable(std::size_t rows, std::size_t actions, Level fill)
      : actions_(actions), values_(rows * actions, fill), present_(rows * actions, 0) {}

  std::size_t rows() const noexcept { return actions_ == 0 ? 0 : values_.size() / actions_; }
  std::size_t num_actions() const noexcept { return actions_; }

  void set(std::size_t row, ActionId a, Level v) {
    values_.at(row * actions_ + a) = v;
    present_[row * actions_ + a] = 1;
  }
  std::optional<Level> at(std::size_t row, ActionId a) const {
    if (!present_.at(row * actions_ + a)) return std::nullopt;
    return values_[row * actions_ + a];
  }

  friend bool operator==(const QTable& x, const QTable& y) {
    return x.actions_ == y.actions_ && x.present_ == y.present_ && x.values_ == y.values_;
  }

 private:
  std::size_t actions_;
  std::vector<Level> values_;
  std::vector<char> present_;
};

struct TraceSnapshot {
  std::size_t sweep = 0;
  ValueFunction values;
  std::vector<std::vector<ActionId>> optimal;  // empty at sweep 0
  std::vector<ActionId> chosen;                // empty at sweep 0
};

struct SolveTrace {
  std::vector<TraceSnapshot> snapshots;
  std::size_t sweeps = 0;
};

namespace detail {

/// Keeps the incumbent while it stays optimal, else the first optimal action.
inline ActionId pick_representative(std::span<const ActionId> optimal, std::optional<ActionId> incumbent) {
  if (optimal.empty()) throw InvalidArgument("empty optimal action set");
  if (incumbent && std::find(optimal.begin(), optimal.end(), *incumbent) != optimal.end()) {
    return *incumbent;
  }
  return optimal.front();
}

}  // namespace detail

using Namer = std::function<std::string(std::size_t)>;

inline std::string format_action_set(std::span<const ActionId> actions, const Namer& action_name) {
  std::string out = "{";
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) out += ',';
    out += action_name(actions[i]);
  }
  return out + "}";
}

inline void write_trace(std::ostream& os, const SolveTrace& trace, const Scale& scale,
                        const Namer& state_name, const Namer& action_name) {
  for (const auto& snap : trace.snapshots) {
    for (std::size_t s = 0; s < snap.values.size(); ++s) {
      os << "sweep=" << snap.sweep << " state=" << state_name(s) << " value=" << scale.label(snap.values[s])
         << " actions=";
      if (snap.optimal.empty()) {
        os << "{}";
      } else {
        os << format_action_set(snap.optimal[s], action_name);
      }
      os << '\n';
    }
  }
}

struct TraceLine {
  std::size_t sweep = 0;
  std::string state;
  std::string value;
  std::vector<std::string> actions;

  friend bool operator==(const TraceLine&, const TraceLine&) = default;
};

/// Parses trace lines; blank lines are skipped.
inline std::vector<TraceLine> parse_trace(std::istream& in) {
  std::vector<TraceLine> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + why);
    };
    std::istringstream fields(line);
    std::string field;
    TraceLine parsed;
    int seen = 0;
    while (fields >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) fail("field without '='");
      auto key = field.substr(0, eq);
      auto val = field.substr(eq + 1);
      if (key == "sweep") {
        try {
          std::size_t used = 0;
          parsed.sweep = std::stoul(val, &used);
          if (used != val.size()) fail("bad sweep number");
        } catch (const std::logic_error&) {
          fail("bad sweep number");
        }
        seen |= 1;
      } else if (key == "state") {
        parsed.state = val;
        seen |= 2;
      } else if (key == "value") {
        parsed.value = val;
        seen |= 4;
      } else if (key == "actions") {
        if (val.size() < 2 || val.front() != '{' || val.back() != '}') fail("bad action set");
        std::string inner = val.substr(1, val.size() - 2);
        std::size_t start = 0;
        while (!inner.empty() && start <= inner.size()) {
          auto comma = inner.find(',', start);
          if (comma == std::string::npos) comma = inner.size();
          parsed.actions.push_back(inner.substr(start, comma - start));
          start = comma + 1;
        }
        seen |= 8;
      } else {
        fail("unknown field '" + key + "'");
      }
    }
    if (seen != 15) fail("missing field");
    out.push_back(std::move(parsed));
  }
  return out;
}

}  // namespace qualplan
