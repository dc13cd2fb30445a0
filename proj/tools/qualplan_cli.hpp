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

// Command-line front end. run_cli() takes the arguments without the program
// name and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 usage or other error, 2 invalid model, 3 file
// parse error, 4 enumeration cap exceeded. Output is buffered and only
// written when the command succeeds.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qualplan.hpp"

namespace qualplan::cli {

inline constexpr const char* kVersion = "qualplan 1.0.0";

struct Options {
  std::string model;
  std::string policy;
  std::string trace;
  std::string out;
  std::string preset = "paper-3x3";
  std::string observation = "walls";
  std::string initial = "ignorance";
  std::string mode = "terminal";
  std::string format = "table";
  std::size_t horizon = 0;
  bool has_horizon = false;
  double epsilon = kDefaultEpsilon;
  bool exhaustive = false;
};

namespace detail {

inline UtilityMode parse_mode(const std::string& m) {
  return m == "intermediate" ? UtilityMode::intermediate : UtilityMode::terminal;
}

inline ModelBundle load(const Options& o) {
  if (o.model.empty()) throw InvalidArgument("--model is required");
  return load_model(o.model);
}

inline const PiMdpModel& need_mdp(const ModelBundle& b) {
  if (!b.mdp) throw InvalidModel({"/scale: the model has no possibilistic part"});
  return *b.mdp;
}

inline const PiPomdpModel& need_pomdp(const ModelBundle& b) {
  if (!b.pomdp) throw InvalidModel({"/observations: the model has no observation part"});
  return *b.pomdp;
}

inline Belief initial_belief(const PiPomdpModel& m, const Options& o) {
  if (o.initial == "ignorance") return Belief::ignorance(m.scale(), m.num_states());
  return parse_belief(m, read_json_file(o.initial));
}

inline BeliefSpace belief_space(const PiPomdpModel& m, const Belief& initial, const Options& o) {
  if (o.exhaustive) return all_beliefs(m);
  return reachable_beliefs(m, std::span<const Belief>(&initial, 1));
}

inline void write_trace_file(const std::string& path, const SolveTrace& trace, const Scale& scale,
                             const Namer& row_name, const Namer& action_name) {
  std::ostringstream buf;
  write_trace(buf, trace, scale, row_name, action_name);
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << buf.str();
}

inline Json action_list(const PiMdpModel& m, std::span<const ActionId> acts) {
  Json out = Json::array();
  for (ActionId a : acts) out.push_back(m.action_name(a));
  return out;
}

inline void table_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i + 1 < cells.size()) os << std::left << std::setw(10) << cells[i] << ' ';
    else os << cells[i];
  }
  os << '\n';
}

// State-level result shared by solve-mdp and eval-policy.
inline void emit_states(std::ostream& os, const Options& o, const PiMdpModel& m, const ValueFunction& values,
                        std::span<const ActionId> chosen, const std::vector<std::vector<ActionId>>* optimal,
                        Json header) {
  const Scale& sc = m.scale();
  Namer aname = [&](std::size_t a) { return m.action_name(a); };
  if (o.format == "json") {
    Json j = std::move(header);
    Json vals = Json::object();
    Json pol = Json::object();
    Json opt = Json::object();
    for (StateId s = 0; s < m.num_states(); ++s) {
      vals[m.state_name(s)] = sc.label(values[s]);
      pol[m.state_name(s)] = m.action_name(chosen[s]);
      if (optimal) opt[m.state_name(s)] = action_list(m, (*optimal)[s]);
    }
    j["values"] = std::move(vals);
    j["policy"] = std::move(pol);
    if (optimal) j["optimal"] = std::move(opt);
    os << j.dump(2) << '\n';
    return;
  }
  if (o.format == "lines") {
    for (const auto& [k, v] : header.items()) os << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    for (StateId s = 0; s < m.num_states(); ++s) {
      os << "state=" << m.state_name(s) << " value=" << sc.label(values[s]) << " action=" << m.action_name(chosen[s]);
      if (optimal) os << " actions=" << format_action_set((*optimal)[s], aname);
      os << '\n';
    }
    return;
  }
  for (const auto& [k, v] : header.items()) os << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  std::vector<std::string> head{"state", "value", "action"};
  if (optimal) head.push_back("optimal");
  table_row(os, head);
  for (StateId s = 0; s < m.num_states(); ++s) {
    std::vector<std::string> row{m.state_name(s), sc.label(values[s]), m.action_name(chosen[s])};
    if (optimal) row.push_back(format_action_set((*optimal)[s], aname));
    table_row(os, row);
  }
}

// Belief-level result shared by solve-pomdp and eval-policy.
inline void emit_beliefs(std::ostream& os, const Options& o, const PiPomdpModel& m, const BeliefSpace& space,
                         const ValueFunction& values, std::span<const ActionId> chosen,
                         const std::vector<std::vector<ActionId>>* optimal, Json header) {
  const Scale& sc = m.scale();
  const PiMdpModel& base = m.base();
  Namer aname = [&](std::size_t a) { return base.action_name(a); };
  if (o.format == "json") {
    Json j = std::move(header);
    Json rows = Json::array();
    Json pol = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
      Json row = Json::object();
      row["index"] = i;
      row["belief"] = belief_to_json(m, space.belief(i));
      row["value"] = sc.label(values[i]);
      row["action"] = base.action_name(chosen[i]);
      if (optimal) row["optimal"] = action_list(base, (*optimal)[i]);
      rows.push_back(std::move(row));
      pol.push_back(Json{{"belief", belief_to_json(m, space.belief(i))}, {"action", base.action_name(chosen[i])}});
    }
    j["beliefs"] = std::move(rows);
    j["belief_policy"] = std::move(pol);
    os << j.dump(2) << '\n';
    return;
  }
  if (o.format == "lines") {
    for (const auto& [k, v] : header.items()) os << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    for (std::size_t i = 0; i < space.size(); ++i) {
      os << "beta=" << i << " value=" << sc.label(values[i]) << " action=" << base.action_name(chosen[i]);
      if (optimal) os << " actions=" << format_action_set((*optimal)[i], aname);
      os << " belief=" << format_belief(m, space.belief(i)) << '\n';
    }
    return;
  }
  for (const auto& [k, v] : header.items()) os << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  std::vector<std::string> head{"beta", "value", "action"};
  if (optimal) head.push_back("optimal");
  head.push_back("belief");
  table_row(os, head);
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::vector<std::string> row{std::to_string(i), sc.label(values[i]), base.action_name(chosen[i])};
    if (optimal) row.push_back(format_action_set((*optimal)[i], aname));
    row.push_back(format_belief(m, space.belief(i)));
    table_row(os, row);
  }
}

inline void solve_mdp(std::ostream& os, const Options& o) {
  auto bundle = load(o);
  const PiMdpModel& m = need_mdp(bundle);
  const UtilityMode mode = parse_mode(o.mode);
  Namer sname = [&](std::size_t s) { return m.state_name(s); };
  Namer aname = [&](std::size_t a) { return m.action_name(a); };
  Json header = Json::object();
  header["mode"] = o.mode;
  if (o.has_horizon) {
    auto sol = backwards_induction(m, o.horizon, mode);
    header["horizon"] = o.horizon;
    if (!o.trace.empty()) write_trace_file(o.trace, sol.trace, m.scale(), sname, aname);
    emit_states(os, o, m, sol.values[0], sol.rules[0].chosen, &sol.rules[0].optimal, std::move(header));
    return;
  }
  auto sol = value_iteration(m, mode);
  header["sweeps"] = sol.sweeps;
  if (!o.trace.empty()) write_trace_file(o.trace, sol.trace, m.scale(), sname, aname);
  emit_states(os, o, m, sol.values, sol.policy.chosen, &sol.policy.optimal, std::move(header));
}

inline void solve_pomdp(std::ostream& os, const Options& o) {
  auto bundle = load(o);
  const PiPomdpModel& m = need_pomdp(bundle);
  const UtilityMode mode = parse_mode(o.mode);
  const Belief initial = initial_belief(m, o);
  BeliefSpace space = belief_space(m, initial, o);
  auto index = space.find(initial);
  if (!index) throw InvalidArgument("initial belief is not normalized");
  Namer bname = [](std::size_t i) { return std::to_string(i); };
  Namer aname = [&](std::size_t a) { return m.base().action_name(a); };
  Json header = Json::object();
  header["mode"] = o.mode;
  header["beliefs"] = space.size();
  if (o.has_horizon) {
    auto sol = backwards_induction_po(m, space, o.horizon, mode);
    SolveTrace trace;
    trace.sweeps = o.horizon;
    trace.snapshots.push_back({0, sol.values[o.horizon], {}, {}});
    for (std::size_t k = 1; k <= o.horizon; ++k) {
      trace.snapshots.push_back({k, sol.values[o.horizon - k], sol.rules[o.horizon - k].optimal,
                                 sol.rules[o.horizon - k].chosen});
    }
    header["horizon"] = o.horizon;
    header["initial"] = *index;
    header["value"] = m.scale().label(sol.values[0][*index]);
    if (!o.trace.empty()) write_trace_file(o.trace, trace, m.scale(), bname, aname);
    emit_beliefs(os, o, m, space, sol.values[0], sol.rules[0].chosen, &sol.rules[0].optimal, std::move(header));
    return;
  }
  auto sol = value_iteration_po(m, space, mode);
  header["sweeps"] = sol.sweeps;
  header["initial"] = *index;
  header["value"] = m.scale().label(sol.values[*index]);
  if (!o.trace.empty()) write_trace_file(o.trace, sol.trace, m.scale(), bname, aname);
  emit_beliefs(os, o, m, space, sol.values, sol.policy.chosen, &sol.policy.optimal, std::move(header));
}

inline std::string real(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline void solve_stoch(std::ostream& os, const Options& o) {
  auto bundle = load(o);
  if (!bundle.stochastic) throw InvalidModel({"/stochastic: the model has no stochastic part"});
  const StochMdpModel& m = *bundle.stochastic;
  std::vector<double> values;
  std::vector<ActionId> policy;
  Json header = Json::object();
  if (o.has_horizon) {
    auto sol = backwards_induction_stoch(m, o.horizon);
    values = sol.values[0];
    policy = sol.policy[0];
    header["horizon"] = o.horizon;
  } else {
    auto sol = value_iteration_stoch(m, o.epsilon);
    values = sol.values;
    policy = sol.policy;
    header["epsilon"] = o.epsilon;
    header["iterations"] = sol.iterations;
  }
  if (o.format == "json") {
    Json j = std::move(header);
    Json vals = Json::object();
    Json pol = Json::object();
    for (StateId s = 0; s < m.num_states(); ++s) {
      vals[m.state_name(s)] = values[s];
      pol[m.state_name(s)] = m.action_name(policy[s]);
    }
    j["values"] = std::move(vals);
    j["policy"] = std::move(pol);
    os << j.dump(2) << '\n';
    return;
  }
  const bool lines = o.format == "lines";
  for (const auto& [k, v] : header.items()) os << k << (lines ? "=" : " ") << v.dump() << '\n';
  if (!lines) table_row(os, {"state", "value", "action"});
  for (StateId s = 0; s < m.num_states(); ++s) {
    if (lines) {
      os << "state=" << m.state_name(s) << " value=" << real(values[s]) << " action=" << m.action_name(policy[s])
         << '\n';
    } else {
      table_row(os, {m.state_name(s), real(values[s]), m.action_name(policy[s])});
    }
  }
}

inline void beliefs(std::ostream& os, const Options& o) {
  auto bundle = load(o);
  const PiPomdpModel& m = need_pomdp(bundle);
  const Belief initial = initial_belief(m, o);
  BeliefSpace space = belief_space(m, initial, o);
  const Scale& sc = m.scale();
  const PiMdpModel& base = m.base();
  auto sorted_actions = [&](std::size_t i) {
    auto acts = space.actions(i);
    std::sort(acts.begin(), acts.end());
    return acts;
  };
  if (o.format == "json") {
    Json j = Json::object();
    j["count"] = space.size();
    Json list = Json::array();
    Json edges = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
      list.push_back(Json{{"index", i}, {"belief", belief_to_json(m, space.belief(i))}});
      for (ActionId a : sorted_actions(i)) {
        for (const auto& e : space.edges(i, a)) {
          edges.push_back(Json{{"beta", i},
                               {"action", base.action_name(a)},
                               {"obs", m.observation_name(e.observation)},
                               {"poss", sc.label(e.possibility)},
                               {"next", e.next}});
        }
      }
    }
    j["beliefs"] = std::move(list);
    j["edges"] = std::move(edges);
    os << j.dump(2) << '\n';
    return;
  }
  os << "beliefs " << space.size() << '\n';
  for (std::size_t i = 0; i < space.size(); ++i) {
    os << "beta=" << i << " belief=" << format_belief(m, space.belief(i)) << '\n';
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (ActionId a : sorted_actions(i)) {
      for (const auto& e : space.edges(i, a)) {
        os << "beta=" << i << " action=" << base.action_name(a) << " obs=" << m.observation_name(e.observation)
           << " poss=" << sc.label(e.possibility) << " next=" << e.next << '\n';
      }
    }
  }
}

inline void eval_policy(std::ostream& os, const Options& o) {
  if (o.policy.empty()) throw InvalidArgument("--policy is required");
  auto bundle = load(o);
  const UtilityMode mode = parse_mode(o.mode);
  Json doc = read_json_file(o.policy);
  Json header = Json::object();
  header["mode"] = o.mode;
  if (doc.is_object() && doc.contains("belief_policy")) {
    const PiPomdpModel& m = need_pomdp(bundle);
    if (o.has_horizon) throw InvalidArgument("belief policies are evaluated over the long run only; drop --horizon");
    auto rules = parse_belief_policy(m, doc);
    const Belief initial = initial_belief(m, o);
    BeliefSpace space = belief_space(m, initial, o);
    std::vector<ActionId> rule;
    std::vector<std::string> missing;
    for (std::size_t i = 0; i < space.size(); ++i) {
      auto it = std::find_if(rules.begin(), rules.end(), [&](const BeliefRule& r) { return r.belief == space.belief(i); });
      if (it == rules.end()) {
        missing.push_back("/belief_policy: no action for belief " + format_belief(m, space.belief(i)));
        rule.push_back(0);
      } else {
        rule.push_back(it->action);
      }
    }
    if (!missing.empty()) throw InvalidModel(missing);
    auto values = stationary_belief_policy_value(m, space, rule, mode);
    auto index = *space.find(initial);
    header["beliefs"] = space.size();
    header["initial"] = index;
    header["value"] = m.scale().label(values[index]);
    emit_beliefs(os, o, m, space, values, rule, nullptr, std::move(header));
    return;
  }
  const PiMdpModel& m = need_mdp(bundle);
  auto rule = parse_policy(m, doc);
  ValueFunction values;
  if (o.has_horizon) {
    values = policy_value(m, rule, o.horizon, mode);
    header["horizon"] = o.horizon;
  } else {
    values = stationary_policy_value(m, rule, mode);
  }
  emit_states(os, o, m, values, rule, nullptr, std::move(header));
}

inline void gen_grid(std::ostream& os, const Options& o) {
  if (o.preset != "paper-3x3") throw InvalidArgument("unknown preset '" + o.preset + "'");
  GridworldSpec spec = reference_room();
  spec.observation = o.observation == "full" ? ObservationMode::full : ObservationMode::walls;
  Json j = to_json(generate_gridworld(spec));
  if (o.out.empty()) {
    os << j.dump(2) << '\n';
  } else {
    write_json_file(o.out, j);
  }
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative (possibilistic) MDP and POMDP solvers"};
  app.require_subcommand(0, 1);
  Options o;
  bool version = false;
  app.add_flag("--version", version, "Print the version and exit");

  const std::vector<std::string> modes{"terminal", "intermediate"};
  const std::vector<std::string> formats{"table", "json", "lines"};
  auto add_model = [&](CLI::App* sub) { sub->add_option("--model", o.model, "Model file (JSON)")->required(); };
  auto add_horizon = [&](CLI::App* sub) {
    sub->add_option("--horizon", o.horizon, "Finite horizon N (>= 1); omit for the stationary solution")
        ->check(CLI::PositiveNumber);
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Utility mode")->check(CLI::IsMember(modes));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  };
  auto add_beliefs = [&](CLI::App* sub) {
    sub->add_option("--initial-belief", o.initial, "'ignorance' or a belief file");
    sub->add_flag("--exhaustive-beliefs", o.exhaustive, "Use every normalized belief instead of the reachable ones");
  };

  auto* mdp = app.add_subcommand("solve-mdp", "Solve the fully observable model");
  add_model(mdp);
  add_horizon(mdp);
  add_mode(mdp);
  add_format(mdp);
  mdp->add_option("--trace", o.trace, "Write per-sweep trace lines to this file");

  auto* pomdp = app.add_subcommand("solve-pomdp", "Solve the partially observable model over beliefs");
  add_model(pomdp);
  add_horizon(pomdp);
  add_mode(pomdp);
  add_format(pomdp);
  add_beliefs(pomdp);
  pomdp->add_option("--trace", o.trace, "Write per-sweep trace lines to this file");

  auto* stoch = app.add_subcommand("solve-stoch", "Solve the stochastic section");
  add_model(stoch);
  add_horizon(stoch);
  add_format(stoch);
  stoch->add_option("--epsilon", o.epsilon, "Value iteration accuracy")->check(CLI::PositiveNumber);

  auto* bel = app.add_subcommand("beliefs", "Dump the belief space and its edges");
  add_model(bel);
  add_format(bel);
  add_beliefs(bel);

  auto* eval = app.add_subcommand("eval-policy", "Evaluate a state or belief policy");
  add_model(eval);
  add_horizon(eval);
  add_mode(eval);
  add_format(eval);
  add_beliefs(eval);
  eval->add_option("--policy", o.policy, "Policy file (JSON)")->required();

  auto* grid = app.add_subcommand("gen-grid", "Write a gridworld model");
  grid->add_option("--preset", o.preset, "Preset name")->check(CLI::IsMember({"paper-3x3"}));
  grid->add_option("--observation", o.observation, "Observation mode")->check(CLI::IsMember({"walls", "full"}));
  grid->add_option("--out", o.out, "Output file (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (version) {
    out << kVersion << '\n';
    return 0;
  }

  std::ostringstream buf;
  try {
    for (auto* sub : {mdp, pomdp, stoch, eval}) {
      if (sub->parsed() && sub->get_option("--horizon")->count() > 0) o.has_horizon = true;
    }
    if (mdp->parsed()) detail::solve_mdp(buf, o);
    else if (pomdp->parsed()) detail::solve_pomdp(buf, o);
    else if (stoch->parsed()) detail::solve_stoch(buf, o);
    else if (bel->parsed()) detail::beliefs(buf, o);
    else if (eval->parsed()) detail::eval_policy(buf, o);
    else if (grid->parsed()) detail::gen_grid(buf, o);
    else {
      out << app.help();
      return 1;
    }
  } catch (const ParseError& e) {
    err << "parse error:\n";
    for (const auto& p : e.problems()) err << "  " << p << '\n';
    return 3;
  } catch (const InvalidModel& e) {
    err << "invalid model:\n";
    for (const auto& p : e.problems()) err << "  " << p << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  out << buf.str();
  return 0;
}

}  // namespace qualplan::cli
