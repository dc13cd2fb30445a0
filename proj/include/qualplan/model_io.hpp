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
 * @file model_io.hpp
 * @brief JSON model files, policy files and belief files.
 *
 * A model file is an object with
 *
 *   "scale":        ["0", "0.2", ..., "1"]        labels, lowest first
 *   "states":       ["s1", ...]
 *   "actions":      ["a", ...]                    every action in every state
 *                or {"s1": ["a", ...], ...}       per-state lists
 *   "action_order": ["a", ...]                    optional global order; may add unused actions
 *   "pi_trans":     {"s": {"a": {"s2": label}}}   omitted entries are 0_L
 *   "mu":           {"s": label}                  omitted entries are 0_L
 *   "observations": ["o", ...]                    optional
 *   "pi_obs":       {"s": {"a": {"o": label}}}    optional
 *   "stochastic":   {"gamma": g, "p_trans": {"s": {"a": {"s2": p}}},
 *                    "reward": {"s": {"a": r}}}   optional
 *
 * Labels may be written as strings or numbers; a number (or numeric string)
 * matches the scale label of equal numeric value. The possibilistic part is
 * present when "scale" is; a file may hold only the stochastic part.
 *
 * Structural problems raise ParseError; unknown names or labels and failed
 * validation raise InvalidModel. Both list every problem with its JSON path.
 */

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qualplan/belief.hpp"
#include "qualplan/errors.hpp"
#include "qualplan/models.hpp"
#include "qualplan/scale.hpp"

namespace qualplan {

using Json = nlohmann::ordered_json;

struct ModelBundle {
  std::optional<PiMdpModel> mdp;        // present with a "scale" section
  std::optional<PiPomdpModel> pomdp;    // present with "observations"
  std::optional<StochMdpModel> stochastic;

  friend bool operator==(const ModelBundle&, const ModelBundle&) = default;
};

namespace detail {

inline std::string pointer_token(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

inline std::string path_of(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) out += "/" + pointer_token(p);
  return out;
}

class Reader {
 public:
  std::vector<std::string> parse_problems;
  std::vector<std::string> model_problems;

  void parse_fail(const std::string& path, const std::string& what) { parse_problems.push_back(path + ": " + what); }
  void model_fail(const std::string& path, const std::string& what) { model_problems.push_back(path + ": " + what); }

  std::vector<std::string> names(const Json& j, const std::string& path) {
    std::vector<std::string> out;
    if (!j.is_array()) {
      parse_fail(path, "expected an array of names");
      return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_string()) {
        parse_fail(path + "/" + std::to_string(i), "expected a string");
        continue;
      }
      out.push_back(j[i].get<std::string>());
    }
    return out;
  }

  std::optional<Level> label(const Scale& scale, const Json& j, const std::string& path) {
    if (j.is_string()) {
      const auto text = j.get<std::string>();
      if (auto l = scale.find(text)) return l;
      double v = 0.0;
      std::istringstream in(text);
      if (in >> v && in.eof()) {
        if (auto l = scale.find_numeric(v)) return l;
      }
      model_fail(path, "label \"" + text + "\" is not on the scale");
      return std::nullopt;
    }
    if (j.is_number()) {
      if (auto l = scale.find_numeric(j.get<double>())) return l;
      model_fail(path, "label " + j.dump() + " is not on the scale");
      return std::nullopt;
    }
    parse_fail(path, "expected a label (string or number)");
    return std::nullopt;
  }

  template <typename Lookup>
  std::optional<std::size_t> ref(Lookup lookup, const std::string& name, const std::string& kind,
                                 const std::string& path) {
    if (auto i = lookup(name)) return i;
    model_fail(path, "unknown " + kind + " \"" + name + "\"");
    return std::nullopt;
  }

  const Json* object(const Json& j, const std::string& path) {
    if (!j.is_object()) {
      parse_fail(path, "expected an object");
      return nullptr;
    }
    return &j;
  }
};

struct Skeleton {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<std::vector<std::string>> available;  // per state
};

inline std::optional<Skeleton> read_skeleton(Reader& rd, const Json& root) {
  Skeleton sk;
  if (!root.contains("states")) rd.parse_fail("/states", "missing section");
  else sk.states = rd.names(root["states"], "/states");
  if (!root.contains("actions")) {
    rd.parse_fail("/actions", "missing section");
    return std::nullopt;
  }
  const Json& acts = root["actions"];
  sk.available.resize(sk.states.size());
  if (acts.is_array()) {
    sk.actions = rd.names(acts, "/actions");
    for (auto& list : sk.available) list = sk.actions;
  } else if (acts.is_object()) {
    for (const auto& [s, list] : acts.items()) {
      auto it = std::find(sk.states.begin(), sk.states.end(), s);
      std::string path = path_of({"actions", s});
      auto names = rd.names(list, path);
      if (it == sk.states.end()) {
        rd.model_fail(path, "unknown state \"" + s + "\"");
        continue;
      }
      for (const auto& a : names) {
        if (std::find(sk.actions.begin(), sk.actions.end(), a) == sk.actions.end()) sk.actions.push_back(a);
      }
      sk.available[static_cast<std::size_t>(it - sk.states.begin())] = std::move(names);
    }
  } else {
    rd.parse_fail("/actions", "expected an array or an object");
  }
  if (root.contains("action_order")) {
    auto order = rd.names(root["action_order"], "/action_order");
    // May also declare actions that no state offers.
    bool covers = true;
    for (const auto& a : sk.actions) covers = covers && std::find(order.begin(), order.end(), a) != order.end();
    auto sorted_order = order;
    std::sort(sorted_order.begin(), sorted_order.end());
    if (std::adjacent_find(sorted_order.begin(), sorted_order.end()) != sorted_order.end()) {
      rd.model_fail("/action_order", "lists an action twice");
    } else if (!covers) {
      rd.model_fail("/action_order", "must list every action named under /actions");
    } else {
      sk.actions = std::move(order);
    }
  }
  if (!rd.parse_problems.empty()) return std::nullopt;
  return sk;
}

template <typename Model>
void enable_all(Model& m, const Skeleton& sk) {
  for (StateId s = 0; s < sk.states.size(); ++s) {
    for (const auto& a : sk.available[s]) {
      if (auto id = m.find_action(a)) m.enable(s, *id);
    }
  }
}

/// Walks {"s": {"a": row}} under the JSON pointer `prefix`, calling
/// f(state, action, row, path) with unresolved ids left empty.
template <typename Model, typename F>
void each_entry(Reader& rd, const Model& m, const Json& section, const std::string& prefix, F f) {
  if (!rd.object(section, prefix)) return;
  for (const auto& [s, per_action] : section.items()) {
    const std::string spath = prefix + "/" + pointer_token(s);
    auto sid = rd.ref([&](const std::string& n) { return m.find_state(n); }, s, "state", spath);
    if (!rd.object(per_action, spath)) continue;
    for (const auto& [a, entries] : per_action.items()) {
      std::string apath = spath + "/" + pointer_token(a);
      auto aid = rd.ref([&](const std::string& n) { return m.find_action(n); }, a, "action", apath);
      if (sid && aid && !m.available(*sid, *aid)) {
        rd.model_fail(apath, "action is not available in this state");
        aid.reset();
      }
      f(sid, aid, entries, apath);
    }
  }
}

inline std::vector<std::string> located(const PiMdpModel& m, const ValidationReport& report, const char* table) {
  std::vector<std::string> out;
  for (const auto& v : report.violations) {
    std::string path = "/";
    if (v.state && v.action) path = path_of({table, m.state_name(*v.state), m.action_name(*v.action)});
    else if (v.state) path = path_of({"actions", m.state_name(*v.state)});
    out.push_back(path + ": " + v.what);
  }
  return out;
}

}  // namespace detail

/// Builds the models described by `root`. Throws ParseError or InvalidModel.
inline ModelBundle parse_model(const Json& root) {
  detail::Reader rd;
  if (!root.is_object()) throw ParseError("model file must be a JSON object");
  auto sk = detail::read_skeleton(rd, root);
  if (!sk) throw ParseError(rd.parse_problems);
  if (!root.contains("scale") && !root.contains("stochastic")) {
    throw ParseError("model file needs a \"scale\" or a \"stochastic\" section");
  }

  ModelBundle out;
  std::optional<Scale> scale;
  if (root.contains("scale")) {
    std::vector<std::string> labels;
    if (!root["scale"].is_array()) rd.parse_fail("/scale", "expected an array of labels");
    else {
      for (std::size_t i = 0; i < root["scale"].size(); ++i) {
        const Json& l = root["scale"][i];
        if (l.is_string()) labels.push_back(l.get<std::string>());
        else if (l.is_number()) labels.push_back(l.dump());
        else rd.parse_fail("/scale/" + std::to_string(i), "expected a label");
      }
    }
    if (!rd.parse_problems.empty()) throw ParseError(rd.parse_problems);
    try {
      scale.emplace(std::move(labels));
    } catch (const InvalidArgument& e) {
      throw InvalidModel({std::string("/scale: ") + e.what()});
    }
  }

  auto build = [&](auto make) {
    try {
      return make();
    } catch (const InvalidArgument& e) {
      throw InvalidModel({std::string("/: ") + e.what()});
    }
  };

  if (scale) {
    PiMdpModel mdp = build([&] { return PiMdpModel(*scale, sk->states, sk->actions); });
    detail::enable_all(mdp, *sk);
    if (root.contains("pi_trans")) {
      detail::each_entry(rd, mdp, root["pi_trans"], "/pi_trans",
                         [&](auto s, auto a, const Json& row, const std::string& path) {
                           if (!rd.object(row, path)) return;
                           for (const auto& [next, value] : row.items()) {
                             std::string p = path + "/" + detail::pointer_token(next);
                             auto n = rd.ref([&](const std::string& x) { return mdp.find_state(x); }, next, "state", p);
                             auto l = rd.label(*scale, value, p);
                             if (s && a && n && l) mdp.set_transition(*s, *a, *n, *l);
                           }
                         });
    }
    if (root.contains("mu")) {
      if (rd.object(root["mu"], "/mu")) {
        for (const auto& [s, value] : root["mu"].items()) {
          std::string p = detail::path_of({"mu", s});
          auto sid = rd.ref([&](const std::string& x) { return mdp.find_state(x); }, s, "state", p);
          auto l = rd.label(*scale, value, p);
          if (sid && l) mdp.set_utility(*sid, *l);
        }
      }
    }
    if (root.contains("observations")) {
      auto obs = rd.names(root["observations"], "/observations");
      if (!rd.parse_problems.empty()) throw ParseError(rd.parse_problems);
      PiPomdpModel pomdp = build([&] { return PiPomdpModel(mdp, obs); });
      if (root.contains("pi_obs")) {
        // Observation rows exist for every action, available or not.
        const Json& section = root["pi_obs"];
        if (rd.object(section, "/pi_obs")) {
          for (const auto& [s, per_action] : section.items()) {
            auto sid = rd.ref([&](const std::string& x) { return pomdp.base().find_state(x); }, s, "state",
                              detail::path_of({"pi_obs", s}));
            if (!rd.object(per_action, detail::path_of({"pi_obs", s}))) continue;
            for (const auto& [a, row] : per_action.items()) {
              std::string apath = detail::path_of({"pi_obs", s, a});
              auto aid = rd.ref([&](const std::string& x) { return pomdp.base().find_action(x); }, a, "action", apath);
              if (!rd.object(row, apath)) continue;
              for (const auto& [o, value] : row.items()) {
                std::string p = apath + "/" + detail::pointer_token(o);
                auto oid = rd.ref([&](const std::string& x) { return pomdp.find_observation(x); }, o, "observation", p);
                auto l = rd.label(*scale, value, p);
                if (sid && aid && oid && l) pomdp.set_observation(*sid, *aid, *oid, *l);
              }
            }
          }
        }
      }
      out.pomdp.emplace(std::move(pomdp));
    } else if (root.contains("pi_obs")) {
      rd.parse_fail("/pi_obs", "needs an \"observations\" section");
    }
    out.mdp.emplace(std::move(mdp));
  }

  if (root.contains("stochastic")) {
    const Json& st = root["stochastic"];
    if (rd.object(st, "/stochastic")) {
      double gamma = 1.0;
      if (st.contains("gamma")) {
        if (st["gamma"].is_number()) gamma = st["gamma"].get<double>();
        else rd.parse_fail("/stochastic/gamma", "expected a number");
      }
      StochMdpModel sm = build([&] { return StochMdpModel(sk->states, sk->actions, gamma); });
      detail::enable_all(sm, *sk);
      if (st.contains("p_trans")) {
        detail::each_entry(rd, sm, st["p_trans"], "/stochastic/p_trans",
                           [&](auto s, auto a, const Json& row, const std::string& path) {
                             if (!rd.object(row, path)) return;
                             for (const auto& [next, value] : row.items()) {
                               std::string p = path + "/" + detail::pointer_token(next);
                               auto n = rd.ref([&](const std::string& x) { return sm.find_state(x); }, next, "state", p);
                               if (!value.is_number()) {
                                 rd.parse_fail(p, "expected a probability");
                                 continue;
                               }
                               if (s && a && n) sm.set_probability(*s, *a, *n, value.template get<double>());
                             }
                           });
      }
      if (st.contains("reward")) {
        const Json& rw = st["reward"];
        if (rd.object(rw, "/stochastic/reward")) {
          for (const auto& [s, per_action] : rw.items()) {
            std::string spath = detail::path_of({"stochastic", "reward", s});
            auto sid = rd.ref([&](const std::string& x) { return sm.find_state(x); }, s, "state", spath);
            if (!rd.object(per_action, spath)) continue;
            for (const auto& [a, value] : per_action.items()) {
              std::string p = spath + "/" + detail::pointer_token(a);
              auto aid = rd.ref([&](const std::string& x) { return sm.find_action(x); }, a, "action", p);
              if (!value.is_number()) {
                rd.parse_fail(p, "expected a number");
                continue;
              }
              if (sid && aid) {
                if (!sm.available(*sid, *aid)) rd.model_fail(p, "action is not available in this state");
                else sm.set_reward(*sid, *aid, value.get<double>());
              }
            }
          }
        }
      }
      out.stochastic.emplace(std::move(sm));
    }
  }

  if (!rd.parse_problems.empty()) throw ParseError(rd.parse_problems);
  if (!rd.model_problems.empty()) throw InvalidModel(rd.model_problems);

  std::vector<std::string> problems;
  if (out.pomdp) {
    out.mdp.emplace(out.pomdp->base());
    auto report = validate(*out.pomdp);
    for (const auto& v : report.violations) {
      bool obs = v.what.find("observation") != std::string::npos;
      auto lines = detail::located(out.pomdp->base(), ValidationReport{{v}}, obs ? "pi_obs" : "pi_trans");
      problems.insert(problems.end(), lines.begin(), lines.end());
    }
  } else if (out.mdp) {
    auto lines = detail::located(*out.mdp, validate(*out.mdp), "pi_trans");
    problems.insert(problems.end(), lines.begin(), lines.end());
  }
  if (out.stochastic) {
    auto report = validate(*out.stochastic);
    for (const auto& v : report.violations) {
      std::string path = "/stochastic";
      if (v.state && v.action) {
        path = detail::path_of({"stochastic", "p_trans", out.stochastic->state_name(*v.state),
                                out.stochastic->action_name(*v.action)});
      } else if (v.state) {
        path = detail::path_of({"actions", out.stochastic->state_name(*v.state)});
      } else {
        path = "/stochastic/gamma";
      }
      problems.push_back(path + ": " + v.what);
    }
  }
  if (!problems.empty()) throw InvalidModel(problems);
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline ModelBundle load_model(const std::string& path) { return parse_model(read_json_file(path)); }

namespace detail {

template <typename Model>
void write_skeleton(Json& root, const Model& m) {
  root["states"] = m.state_names();
  bool uniform = true;
  for (StateId s = 0; s < m.num_states(); ++s) uniform = uniform && m.actions(s).size() == m.num_actions();
  if (uniform) {
    root["actions"] = m.action_names();
    return;
  }
  Json per_state = Json::object();
  for (StateId s = 0; s < m.num_states(); ++s) {
    Json list = Json::array();
    for (ActionId a : m.actions(s)) list.push_back(m.action_name(a));
    per_state[m.state_name(s)] = std::move(list);
  }
  root["actions"] = std::move(per_state);
  root["action_order"] = m.action_names();
}

inline void write_possibilistic(Json& root, const PiMdpModel& m) {
  root["scale"] = m.scale().labels();
  write_skeleton(root, m);
  Json trans = Json::object();
  for (StateId s = 0; s < m.num_states(); ++s) {
    Json per_action = Json::object();
    for (ActionId a : m.actions(s)) {
      Json row = Json::object();
      for (StateId x = 0; x < m.num_states(); ++x) {
        Level p = m.transition(s, a, x);
        if (!p.is_bottom()) row[m.state_name(x)] = m.scale().label(p);
      }
      per_action[m.action_name(a)] = std::move(row);
    }
    trans[m.state_name(s)] = std::move(per_action);
  }
  root["pi_trans"] = std::move(trans);
  Json mu = Json::object();
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (!m.utility(s).is_bottom()) mu[m.state_name(s)] = m.scale().label(m.utility(s));
  }
  root["mu"] = std::move(mu);
}

}  // namespace detail

inline Json to_json(const PiMdpModel& m) {
  Json root = Json::object();
  detail::write_possibilistic(root, m);
  return root;
}

inline Json to_json(const PiPomdpModel& m) {
  Json root = to_json(m.base());
  root["observations"] = m.observation_names();
  Json table = Json::object();
  for (StateId s = 0; s < m.num_states(); ++s) {
    Json per_action = Json::object();
    for (ActionId a = 0; a < m.num_actions(); ++a) {
      Json row = Json::object();
      for (ObsId o = 0; o < m.num_observations(); ++o) {
        Level p = m.observation(s, a, o);
        if (!p.is_bottom()) row[m.observation_name(o)] = m.scale().label(p);
      }
      if (!row.empty()) per_action[m.base().action_name(a)] = std::move(row);
    }
    table[m.base().state_name(s)] = std::move(per_action);
  }
  root["pi_obs"] = std::move(table);
  return root;
}

/// Appends the stochastic section; `root` must describe the same states and
/// actions (or be empty).
inline Json with_stochastic(Json root, const StochMdpModel& m) {
  if (!root.contains("states")) detail::write_skeleton(root, m);
  Json st = Json::object();
  st["gamma"] = m.discount();
  Json trans = Json::object();
  Json reward = Json::object();
  for (StateId s = 0; s < m.num_states(); ++s) {
    Json per_action = Json::object();
    Json rewards = Json::object();
    for (ActionId a : m.actions(s)) {
      Json row = Json::object();
      for (StateId x = 0; x < m.num_states(); ++x) {
        double p = m.probability(s, a, x);
        if (p != 0.0) row[m.state_name(x)] = p;
      }
      per_action[m.action_name(a)] = std::move(row);
      rewards[m.action_name(a)] = m.reward(s, a);
    }
    trans[m.state_name(s)] = std::move(per_action);
    reward[m.state_name(s)] = std::move(rewards);
  }
  st["p_trans"] = std::move(trans);
  st["reward"] = std::move(reward);
  root["stochastic"] = std::move(st);
  return root;
}

inline Json to_json(const ModelBundle& b) {
  Json root = Json::object();
  if (b.pomdp) root = to_json(*b.pomdp);
  else if (b.mdp) root = to_json(*b.mdp);
  if (b.stochastic) root = with_stochastic(std::move(root), *b.stochastic);
  return root;
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// {"belief": {"s": label}}; omitted states are 0_L.
inline Belief parse_belief(const PiPomdpModel& m, const Json& root) {
  detail::Reader rd;
  if (!root.is_object() || !root.contains("belief")) throw ParseError("belief file needs a \"belief\" object");
  std::vector<Level> values(m.num_states(), m.scale().bottom());
  if (rd.object(root["belief"], "/belief")) {
    for (const auto& [s, value] : root["belief"].items()) {
      std::string p = detail::path_of({"belief", s});
      auto sid = rd.ref([&](const std::string& x) { return m.base().find_state(x); }, s, "state", p);
      auto l = rd.label(m.scale(), value, p);
      if (sid && l) values[*sid] = *l;
    }
  }
  if (!rd.parse_problems.empty()) throw ParseError(rd.parse_problems);
  if (!rd.model_problems.empty()) throw InvalidModel(rd.model_problems);
  Belief b(std::move(values));
  if (!b.normalized()) throw InvalidModel({"/belief: no state has the top level"});
  return b;
}

inline Json belief_to_json(const PiPomdpModel& m, const Belief& b) {
  Json obj = Json::object();
  for (StateId s = 0; s < b.size(); ++s) {
    if (!b[s].is_bottom()) obj[m.base().state_name(s)] = m.scale().label(b[s]);
  }
  return obj;
}

/// {"policy": {"s": "a"}}: one action per state.
template <typename Model>
std::vector<ActionId> parse_policy(const Model& m, const Json& root) {
  detail::Reader rd;
  if (!root.is_object() || !root.contains("policy") || !root["policy"].is_object()) {
    throw ParseError("policy file needs a \"policy\" object");
  }
  std::vector<std::optional<ActionId>> rule(m.num_states());
  for (const auto& [s, a] : root["policy"].items()) {
    std::string p = detail::path_of({"policy", s});
    if (!a.is_string()) {
      rd.parse_fail(p, "expected an action name");
      continue;
    }
    auto sid = rd.ref([&](const std::string& x) { return m.find_state(x); }, s, "state", p);
    auto aid = rd.ref([&](const std::string& x) { return m.find_action(x); }, a.template get<std::string>(),
                      "action", p);
    if (sid && aid) {
      if (!m.available(*sid, *aid)) rd.model_fail(p, "action is not available in this state");
      else rule[*sid] = *aid;
    }
  }
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (!rule[s]) rd.model_fail(detail::path_of({"policy", m.state_name(s)}), "missing");
  }
  if (!rd.parse_problems.empty()) throw ParseError(rd.parse_problems);
  if (!rd.model_problems.empty()) throw InvalidModel(rd.model_problems);
  std::vector<ActionId> out;
  for (auto a : rule) out.push_back(*a);
  return out;
}

template <typename Model>
Json policy_to_json(const Model& m, std::span<const ActionId> rule) {
  Json obj = Json::object();
  for (StateId s = 0; s < rule.size(); ++s) obj[m.state_name(s)] = m.action_name(rule[s]);
  return Json{{"policy", std::move(obj)}};
}

struct BeliefRule {
  Belief belief;
  ActionId action;
};

/// {"belief_policy": [{"belief": {...}, "action": "a"}, ...]}
inline std::vector<BeliefRule> parse_belief_policy(const PiPomdpModel& m, const Json& root) {
  if (!root.is_object() || !root.contains("belief_policy") || !root["belief_policy"].is_array()) {
    throw ParseError("belief policy file needs a \"belief_policy\" array");
  }
  std::vector<BeliefRule> out;
  const Json& list = root["belief_policy"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string p = "/belief_policy/" + std::to_string(i);
    const Json& entry = list[i];
    if (!entry.is_object() || !entry.contains("belief") || !entry.contains("action") ||
        !entry["action"].is_string()) {
      throw ParseError(p + ": expected {\"belief\": {...}, \"action\": name}");
    }
    Belief b = parse_belief(m, Json{{"belief", entry["belief"]}});
    auto a = m.base().find_action(entry["action"].get<std::string>());
    if (!a) throw InvalidModel({p + "/action: unknown action \"" + entry["action"].get<std::string>() + "\""});
    out.push_back({std::move(b), *a});
  }
  return out;
}

}  // namespace qualplan
