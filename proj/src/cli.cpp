// Copyright 2026 The hosel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hosel/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "hosel/game.hpp"
#include "hosel/selection.hpp"
#include "hosel/text_format.hpp"
#include "hosel/tree.hpp"

namespace hosel {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class F>
auto parse_file(const std::string& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

Hors load_hors(const std::string& path) {
  Hors h = parse_file(path, [](const std::string& t) { return parse_hors(t); });
  if (auto diags = check_wellformed(h); !diags.empty()) {
    std::string msg = path + ": ill-formed scheme";
    for (const auto& d : diags) msg += "\n  " + d.subject + ": " + d.message;
    throw InputError(msg);
  }
  return h;
}

Apt load_apt(const std::string& path, const Hors& h) {
  return parse_file(path, [&](const std::string& t) { return parse_apt(t, h.alphabet()); });
}

StateId pick_state(const Apt& m, const std::string& name) {
  if (name.empty()) return m.initial();
  auto q = m.find_state(name);
  if (!q) throw InputError("unknown state " + name);
  return *q;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string game_text(const SequentGame& g, const Apt& m, const Solution& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    out << i << (g.arena.owner[i] == Player::Eve ? " E " : " A ") << g.arena.priority[i]
        << (s.eve_wins(i) ? " win " : " lose ") << to_string(g.nodes[i], m) << " ->";
    for (std::size_t j : g.arena.successors[i]) out << ' ' << j;
    out << '\n';
  }
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order model checker for recursion schemes against parity tree automata", "hosel"};
  app.require_subcommand(1);

  std::string scheme, automaton, state, output, witness, format = "text";
  std::size_t depth = 10;
  bool quiet = false, dot = false;

  auto inputs = [&](CLI::App* sub) {
    sub->add_option("scheme", scheme, "Scheme file")->required();
    sub->add_option("automaton", automaton, "Automaton file")->required();
  };
  auto* check = app.add_subcommand("check", "Decide acceptance at one state");
  inputs(check);
  check->add_option("-q,--state", state, "State (default: initial)");
  check->add_flag("--quiet", quiet, "Report only through the exit code");

  auto* states = app.add_subcommand("states", "List the accepting states");
  inputs(states);

  auto* select = app.add_subcommand("select", "Write a witness scheme for an accepted state");
  inputs(select);
  select->add_option("-q,--state", state, "State (default: initial)");
  select->add_option("-o,--output", output, "Output file");

  auto* unfold_cmd = app.add_subcommand("unfold", "Print a finite prefix of the value tree");
  unfold_cmd->add_option("scheme", scheme, "Scheme file")->required();
  unfold_cmd->add_option("-d,--depth", depth, "Depth")->required();
  unfold_cmd->add_option("-o,--output", output, "Output file");

  auto* verify = app.add_subcommand("verify", "Check a witness run-tree to a finite depth");
  inputs(verify);
  verify->add_option("-q,--state", state, "State (default: initial)");
  verify->add_option("-d,--depth", depth, "Depth (default 10)");
  verify->add_option("-w,--witness", witness, "Witness scheme (default: extract one)");

  auto* dump = app.add_subcommand("dump-game", "Print the typing game");
  inputs(dump);
  dump->add_option("--format", format, "text or dot")->check(CLI::IsMember({"text", "dot"}));
  dump->add_flag("--dot", dot, "Same as --format dot");
  dump->add_option("-o,--output", output, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (unfold_cmd->parsed()) {
      Hors h = load_hors(scheme);
      UnfoldResult r = unfold(h, depth);
      emit(to_sexpr(r.tree) + "\n", output, out);
      if (!r.unresolved.empty())
        err << "note: " << r.unresolved.size() << " node(s) left unresolved by the step budget\n";
      return 0;
    }

    Hors h = load_hors(scheme);
    Apt m = load_apt(automaton, h);
    SequentGame g = build_game(h, m);
    Solution s = zielonka(g.arena);

    if (check->parsed()) {
      StateId q = pick_state(m, state);
      bool ok = s.eve_wins(*g.eve_node(h.start, IType::state(q)));
      if (!quiet) out << (ok ? "ACCEPT" : "REJECT") << "\n";
      return ok ? 0 : 1;
    }
    if (states->parsed()) {
      for (StateId q : accepted_states(g, s, h)) out << m.name(q) << "\n";
      return 0;
    }
    if (select->parsed()) {
      StateId q = pick_state(m, state);
      if (!s.eve_wins(*g.eve_node(h.start, IType::state(q)))) {
        err << "state " << m.name(q) << " is rejected\n";
        return 1;
      }
      emit(print_hors(extract_scheme(h, m, g, s, q).scheme), output, out);
      return 0;
    }
    if (verify->parsed()) {
      StateId q = pick_state(m, state);
      AnnotatedHors w;
      if (!witness.empty()) {
        w.scheme = load_hors(witness);
      } else if (!s.eve_wins(*g.eve_node(h.start, IType::state(q)))) {
        err << "state " << m.name(q) << " is rejected\n";
        return 1;
      } else {
        w = extract_scheme(h, m, g, s, q);
      }
      RunReport r = verify_runtree(w, h, m, q, depth);
      out << to_string(r);
      return r.passed() ? 0 : 1;
    }
    if (dump->parsed()) {
      emit(dot || format == "dot" ? to_dot(g, m, &s) : game_text(g, m, s), output, out);
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}

}  // namespace hosel
