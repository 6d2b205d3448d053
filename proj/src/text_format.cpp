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

#include "hosel/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace hosel {

namespace {

enum class Tok { Ident, Number, Colon, Equals, Arrow, LParen, RParen, Comma, And, Or, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  bool spaced;  // preceded by blank or line start
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Newline:
      return "end of line";
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  bool spaced = true;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, int c) {
    out.push_back({k, std::move(s), line, c, spaced});
    spaced = false;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '\n') {
      push(Tok::Newline, "\n", col);
      ++line;
      col = 1;
      ++i;
      spaced = true;
      continue;
    }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i, ++col;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i, ++col;
      spaced = true;
      continue;
    }
    const int start = col;
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      if (j < text.size() && text[j] == '@') {
        int depth = 0;
        ++j;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
          char c = text[j];
          if (c == '{' || c == '(') ++depth;
          if (c == '}' || c == ')') {
            if (depth == 0) break;
            --depth;
          }
          ++j;
        }
        if (depth != 0) throw ParseError(line, start, "unbalanced brackets in annotated name");
      }
      push(Tok::Ident, text.substr(i, j - i), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      push(Tok::Number, text.substr(i, j - i), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->" || two == "/\\" || two == "\\/") {
      push(two == "->" ? Tok::Arrow : two == "/\\" ? Tok::And : Tok::Or, two, start);
      i += 2, col += 2;
      continue;
    }
    Tok k;
    switch (ch) {
      case ':': k = Tok::Colon; break;
      case '=': k = Tok::Equals; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
    }
    push(k, std::string(1, ch), start);
    ++i, ++col;
  }
  push(Tok::Newline, "\n", col);
  push(Tok::End, "", col);
  return out;
}

using Line = std::vector<Token>;

struct Section {
  Token header;
  std::vector<Line> lines;
};

// Splits the token stream into sections; a section header is a keyword
// immediately followed by ':'.  Text after the header joins the section.
std::vector<Section> sections(const std::vector<Token>& toks, const std::set<std::string>& keywords) {
  std::vector<Section> out;
  Line current;
  bool line_start = true;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == Tok::End) break;
    if (t.kind == Tok::Newline) {
      if (!current.empty()) {
        if (out.empty()) throw ParseError(current.front().line, current.front().column, "entry outside any section");
        out.back().lines.push_back(std::move(current));
        current.clear();
      }
      line_start = true;
      continue;
    }
    if (line_start && t.kind == Tok::Ident && keywords.count(t.text) && toks[i + 1].kind == Tok::Colon &&
        !toks[i + 1].spaced) {
      out.push_back({t, {}});
      ++i;
      line_start = false;
      continue;
    }
    line_start = false;
    current.push_back(t);
  }
  return out;
}

// Splits a line at top-level commas.
std::vector<Line> split_commas(const Line& line) {
  std::vector<Line> out(1);
  int depth = 0;
  for (const auto& t : line) {
    if (t.kind == Tok::LParen) ++depth;
    if (t.kind == Tok::RParen) --depth;
    if (t.kind == Tok::Comma && depth == 0) {
      out.emplace_back();
      continue;
    }
    out.back().push_back(t);
  }
  return out;
}

class Cursor {
 public:
  Cursor(const Line& line, const Token& fallback) : line_(line) {
    if (!line.empty()) {
      end_ = line.back();
      end_.kind = Tok::Newline;
      end_.column += static_cast<int>(line.back().text.size());
    } else {
      end_ = fallback;
      end_.kind = Tok::Newline;
    }
  }

  const Token& peek(std::size_t ahead = 0) const { return pos_ + ahead < line_.size() ? line_[pos_ + ahead] : end_; }
  bool at_end() const { return pos_ >= line_.size(); }
  const Token& next() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what + ", found " + describe(peek()));
    return next();
  }
  void finish() {
    if (!at_end()) fail("unexpected " + describe(peek()));
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().line, peek().column, msg); }

 private:
  const Line& line_;
  Token end_;
  std::size_t pos_ = 0;
};

SimpleType sort(Cursor& c) {
  SimpleType domain;
  if (c.peek().kind == Tok::LParen) {
    c.next();
    domain = sort(c);
    c.expect(Tok::RParen, "')'");
  } else {
    const Token& t = c.expect(Tok::Ident, "sort");
    if (t.text != "o") throw ParseError(t.line, t.column, "unknown sort '" + t.text + "'");
  }
  if (c.peek().kind != Tok::Arrow) return domain;
  c.next();
  return SimpleType::arrow(domain, sort(c));
}

// Applicative expression with names left unresolved.
struct RawExpr {
  Token name;
  std::vector<RawExpr> parts;  // empty for a name; else function then arguments
};

RawExpr expression(Cursor& c);

RawExpr atom(Cursor& c) {
  if (c.peek().kind == Tok::LParen) {
    c.next();
    RawExpr e = expression(c);
    c.expect(Tok::RParen, "')'");
    return e;
  }
  return RawExpr{c.expect(Tok::Ident, "identifier"), {}};
}

RawExpr expression(Cursor& c) {
  RawExpr head = atom(c);
  if (c.peek().kind != Tok::Ident && c.peek().kind != Tok::LParen) return head;
  RawExpr e{head.name, {std::move(head)}};
  while (c.peek().kind == Tok::Ident || c.peek().kind == Tok::LParen) e.parts.push_back(atom(c));
  return e;
}

}  // namespace

SimpleType parse_sort(const std::string& text) {
  auto toks = lex(text);
  Line line;
  for (const auto& t : toks)
    if (t.kind != Tok::Newline && t.kind != Tok::End) line.push_back(t);
  Cursor c(line, toks.back());
  SimpleType s = sort(c);
  c.finish();
  return s;
}

Hors parse_hors(const std::string& text) {
  auto toks = lex(text);
  auto secs = sections(toks, {"terminals", "nonterminals", "start", "rules"});
  Hors h;
  std::set<std::string> seen_sections;
  struct RawRule {
    Token head;
    std::vector<Token> params;
    RawExpr body;
  };
  std::vector<RawRule> raw_rules;
  std::optional<Token> start;

  for (const auto& sec : secs) {
    if (!seen_sections.insert(sec.header.text).second)
      throw ParseError(sec.header.line, sec.header.column, "duplicate section '" + sec.header.text + "'");
    for (const auto& line : sec.lines) {
      if (sec.header.text == "rules") {
        Cursor c(line, sec.header);
        RawRule r{c.expect(Tok::Ident, "nonterminal"), {}, {}};
        while (c.peek().kind == Tok::Ident) r.params.push_back(c.next());
        c.expect(Tok::Equals, "'='");
        r.body = expression(c);
        c.finish();
        raw_rules.push_back(std::move(r));
        continue;
      }
      for (const auto& entry : split_commas(line)) {
        Cursor c(entry, line.front());
        if (sec.header.text == "start") {
          if (start) c.fail("start symbol given twice");
          start = c.expect(Tok::Ident, "start symbol");
        } else if (sec.header.text == "terminals") {
          const Token& name = c.expect(Tok::Ident, "terminal name");
          c.expect(Tok::Colon, "':'");
          const Token& n = c.expect(Tok::Number, "arity");
          if (h.arity_of(name.text)) throw ParseError(name.line, name.column, "terminal declared twice");
          h.terminals.push_back({name.text, std::stoi(n.text)});
        } else {
          const Token& name = c.expect(Tok::Ident, "nonterminal name");
          c.expect(Tok::Colon, "':'");
          SimpleType s = sort(c);
          if (h.sort_of(name.text)) throw ParseError(name.line, name.column, "nonterminal declared twice");
          h.nonterminals.push_back({name.text, s});
        }
        c.finish();
      }
    }
  }
  if (!start) throw ParseError(toks.back().line, 1, "missing start section");
  if (!h.sort_of(start->text)) throw ParseError(start->line, start->column, "undeclared start symbol");
  h.start = start->text;

  for (const auto& r : raw_rules) {
    auto s = h.sort_of(r.head.text);
    if (!s) throw ParseError(r.head.line, r.head.column, "rule for undeclared nonterminal '" + r.head.text + "'");
    if (h.rules.count(r.head.text)) throw ParseError(r.head.line, r.head.column, "second rule for " + r.head.text);
    auto sorts = s->arguments();
    if (r.params.size() > sorts.size())
      throw ParseError(r.params[sorts.size()].line, r.params[sorts.size()].column, "too many parameters");
    Rule rule;
    std::set<std::string> params;
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      rule.binders.push_back({r.params[i].text, sorts[i]});
      params.insert(r.params[i].text);
    }
    std::function<TermPtr(const RawExpr&)> resolve = [&](const RawExpr& e) -> TermPtr {
      if (!e.parts.empty()) {
        TermPtr t = resolve(e.parts.front());
        for (std::size_t i = 1; i < e.parts.size(); ++i) t = app(t, resolve(e.parts[i]));
        return t;
      }
      const std::string& n = e.name.text;
      if (params.count(n)) return var(n);
      if (h.sort_of(n)) return nonterminal(n);
      if (h.arity_of(n)) return terminal(n);
      throw ParseError(e.name.line, e.name.column, "unknown identifier '" + n + "'");
    };
    rule.body = resolve(r.body);
    h.rules.emplace(r.head.text, std::move(rule));
  }
  return h;
}

std::string print_hors(const Hors& h) {
  std::string out = "terminals:\n";
  for (const auto& t : h.terminals) out += "  " + t.name + " : " + std::to_string(t.arity) + "\n";
  out += "nonterminals:\n";
  for (const auto& n : h.nonterminals) out += "  " + n.name + " : " + n.sort.str() + "\n";
  out += "start: " + h.start + "\n";
  out += "rules:\n";
  for (const auto& n : h.nonterminals) {
    auto it = h.rules.find(n.name);
    if (it == h.rules.end()) continue;
    out += "  " + n.name;
    for (const auto& b : it->second.binders) out += " " + b.name;
    out += " = " + to_string(it->second.body) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class FormulaParser {
 public:
  FormulaParser(Cursor& c, const Apt& m, int arity) : c_(c), m_(m), arity_(arity) {}

  Formula disjunction() {
    Formula f = conjunction();
    while (c_.peek().kind == Tok::Or) {
      c_.next();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

 private:
  Formula conjunction() {
    Formula f = primary();
    while (c_.peek().kind == Tok::And) {
      c_.next();
      f = Formula::conj(f, primary());
    }
    return f;
  }

  Formula primary() {
    const Token& t = c_.peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      c_.next();
      return t.text == "true" ? Formula::truth() : Formula::falsity();
    }
    if (t.kind != Tok::LParen) c_.fail("expected formula, found " + describe(t));
    if (c_.peek(1).kind == Tok::Number && c_.peek(2).kind == Tok::Comma) {
      c_.next();
      const Token& d = c_.next();
      c_.next();
      const Token& q = c_.expect(Tok::Ident, "state");
      c_.expect(Tok::RParen, "')'");
      int dir = std::stoi(d.text);
      if (dir < 1 || dir > arity_)
        throw ParseError(d.line, d.column, "direction " + d.text + " out of range 1.." + std::to_string(arity_));
      auto s = m_.find_state(q.text);
      if (!s) throw ParseError(q.line, q.column, "unknown state '" + q.text + "'");
      return Formula::atom(dir, *s);
    }
    c_.next();
    Formula f = disjunction();
    c_.expect(Tok::RParen, "')'");
    return f;
  }

  Cursor& c_;
  const Apt& m_;
  int arity_;
};

}  // namespace

Apt parse_apt(const std::string& text, const std::map<std::string, int>& alphabet) {
  auto toks = lex(text);
  auto secs = sections(toks, {"states", "initial", "colors", "delta"});
  const Section* by_name[4] = {nullptr, nullptr, nullptr, nullptr};
  const char* names[4] = {"states", "initial", "colors", "delta"};
  for (const auto& sec : secs)
    for (int i = 0; i < 4; ++i)
      if (sec.header.text == names[i]) {
        if (by_name[i]) throw ParseError(sec.header.line, sec.header.column, "duplicate section '" + sec.header.text + "'");
        by_name[i] = &sec;
      }
  for (int i = 0; i < 3; ++i)
    if (!by_name[i]) throw ParseError(toks.back().line, 1, std::string("missing ") + names[i] + " section");

  std::vector<std::string> states;
  std::vector<Token> state_tokens;
  for (const auto& line : by_name[0]->lines)
    for (const auto& t : line) {
      if (t.kind == Tok::Comma) continue;
      if (t.kind != Tok::Ident) throw ParseError(t.line, t.column, "expected state name, found " + describe(t));
      if (std::find(states.begin(), states.end(), t.text) != states.end())
        throw ParseError(t.line, t.column, "state declared twice");
      states.push_back(t.text);
    }
  if (states.empty()) throw ParseError(by_name[0]->header.line, by_name[0]->header.column, "no states");
  Apt m(states, alphabet);

  auto state = [&](Cursor& c) {
    const Token& t = c.expect(Tok::Ident, "state");
    auto q = m.find_state(t.text);
    if (!q) throw ParseError(t.line, t.column, "unknown state '" + t.text + "'");
    return *q;
  };

  {
    Line all;
    for (const auto& line : by_name[1]->lines) all.insert(all.end(), line.begin(), line.end());
    Cursor c(all, by_name[1]->header);
    m.set_initial(state(c));
    c.finish();
  }

  std::vector<bool> colored(states.size(), false);
  for (const auto& line : by_name[2]->lines)
    for (const auto& entry : split_commas(line)) {
      Cursor c(entry, line.front());
      StateId q = state(c);
      c.expect(Tok::Arrow, "'->'");
      const Token& n = c.expect(Tok::Number, "color");
      c.finish();
      if (colored[q.value]) throw ParseError(n.line, n.column, "color given twice");
      colored[q.value] = true;
      m.set_omega(q, static_cast<std::uint32_t>(std::stoul(n.text)));
    }
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!colored[i])
      throw ParseError(by_name[2]->header.line, by_name[2]->header.column, "no color for state " + states[i]);

  if (by_name[3])
    for (const auto& line : by_name[3]->lines) {
      Cursor c(line, by_name[3]->header);
      StateId q = state(c);
      const Token& a = c.expect(Tok::Ident, "symbol");
      auto it = alphabet.find(a.text);
      if (it == alphabet.end()) throw ParseError(a.line, a.column, "unknown symbol '" + a.text + "'");
      if (m.explicit_delta().count({q, a.text})) throw ParseError(a.line, a.column, "transition given twice");
      c.expect(Tok::Arrow, "'->'");
      Formula f = FormulaParser(c, m, it->second).disjunction();
      c.finish();
      m.set_delta(q, a.text, f);
    }
  return m;
}

std::string print_apt(const Apt& m) {
  std::string out = "states:";
  for (const auto& s : m.states()) out += " " + s;
  out += "\ninitial: " + m.name(m.initial()) + "\ncolors:";
  for (std::uint32_t q = 0; q < m.state_count(); ++q)
    out += std::string(q ? "," : "") + " " + m.name(StateId{q}) + " -> " + std::to_string(m.omega_value(StateId{q}));
  out += "\ndelta:\n";
  for (const auto& [key, f] : m.explicit_delta())
    out += "  " + m.name(key.first) + " " + key.second + " -> " + to_string(f, m) + "\n";
  return out;
}

}  // namespace hosel
