#include "autostruct/turing.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::vector<std::string> words_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw FormatError("TM line " + std::to_string(line) + ": " + msg);
}

}  // namespace

const TuringMachine::Rule* TuringMachine::rule(const std::string& state, const std::string& read) const {
  for (const auto& r : rules)
    if (r.state == state && r.read == read) return &r;
  return nullptr;
}

TuringMachine parse_turing_machine(std::string_view text) {
  TuringMachine tm;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = words_of(raw);
    if (toks.empty()) continue;
    const std::string key = toks[0];
    std::vector<std::string> rest(toks.begin() + 1, toks.end());
    if (key == "tape:") {
      tm.tape = rest;
    } else if (key == "blank:") {
      if (rest.size() != 1) fail(line, "expected one blank symbol");
      tm.blank = rest[0];
    } else if (key == "states:") {
      tm.states = rest;
    } else if (key == "initial:") {
      if (rest.size() != 1) fail(line, "expected one initial state");
      tm.initial = rest[0];
    } else if (key == "halt:") {
      tm.halting = rest;
    } else if (key == "trans" || key == "trans:") {
      if (rest.size() != 6 || rest[2] != "->") fail(line, "expected 'trans q a -> r b L|R'");
      if (rest[5] != "L" && rest[5] != "R") fail(line, "move must be L or R");
      tm.rules.push_back({rest[0], rest[1], rest[3], rest[4], rest[5][0]});
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  validate(tm);
  return tm;
}

std::string format_turing_machine(const TuringMachine& tm) {
  std::ostringstream out;
  auto list = [&](const char* key, const std::vector<std::string>& v) {
    out << key;
    for (const auto& s : v) out << ' ' << s;
    out << '\n';
  };
  list("tape:", tm.tape);
  out << "blank: " << tm.blank << '\n';
  list("states:", tm.states);
  out << "initial: " << tm.initial << '\n';
  list("halt:", tm.halting);
  for (const auto& r : tm.rules)
    out << "trans " << r.state << ' ' << r.read << " -> " << r.next << ' ' << r.write << ' ' << r.move << '\n';
  return out.str();
}

void validate(const TuringMachine& tm) {
  if (tm.tape.empty()) throw FormatError("TM: empty tape alphabet");
  if (tm.states.empty()) throw FormatError("TM: no states");
  if (!contains(tm.tape, tm.blank)) throw FormatError("TM: blank '" + tm.blank + "' is not a tape symbol");
  if (!contains(tm.states, tm.initial)) throw FormatError("TM: initial state '" + tm.initial + "' is undeclared");
  std::set<std::string> names;
  for (const auto& s : tm.tape)
    if (!names.insert(s).second) throw FormatError("TM: duplicate tape symbol '" + s + "'");
  for (const auto& s : tm.states)
    if (!names.insert(s).second) throw FormatError("TM: '" + s + "' is both a tape symbol and a state or repeated");
  if (names.count("_")) throw FormatError("TM: '_' is reserved for the pad; pick another blank");
  for (const auto& h : tm.halting)
    if (!contains(tm.states, h)) throw FormatError("TM: halting state '" + h + "' is undeclared");
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : tm.rules) {
    if (!contains(tm.states, r.state) || !contains(tm.states, r.next))
      throw FormatError("TM: rule uses an undeclared state");
    if (!contains(tm.tape, r.read) || !contains(tm.tape, r.write))
      throw FormatError("TM: rule uses an undeclared tape symbol");
    if (contains(tm.halting, r.state)) throw FormatError("TM: halting state '" + r.state + "' has a rule");
    if (r.move != 'L' && r.move != 'R') throw FormatError("TM: move must be L or R");
    if (!seen.insert({r.state, r.read}).second)
      throw FormatError("TM: two rules for state '" + r.state + "' reading '" + r.read + "'");
  }
}

Presentation tm_config_space(const TuringMachine& tm) {
  validate(tm);
  std::vector<std::string> names = tm.tape;
  names.insert(names.end(), tm.states.begin(), tm.states.end());
  auto b = Alphabet::make(names);
  std::vector<Symbol> gamma, states;
  for (const auto& s : tm.tape) gamma.push_back(b->at(s));
  for (const auto& s : tm.states) states.push_back(b->at(s));
  const Symbol blank = b->at(tm.blank);

  // left state head right, right empty or ending in a non-blank
  Nfa dom(b, 4);
  for (Symbol g : gamma) {
    dom.add_transition(0, g, 0);
    dom.add_transition(2, g, g == blank ? 3 : 2);
    dom.add_transition(3, g, g == blank ? 3 : 2);
  }
  State head = dom.add_state();
  for (Symbol q : states) dom.add_transition(0, q, head);
  for (Symbol g : gamma) dom.add_transition(head, g, 2);
  dom.set_accepting(2);
  Presentation p(b, minimize(determinize(dom)));

  auto t2 = Alphabet::tracks(b, 2);
  const std::uint32_t pad = pad_digit(*b);
  auto col = [&](std::uint32_t x, std::uint32_t y) {
    const std::uint32_t d[2] = {x, y};
    return encode_column(*b, d);
  };
  // 0 start (empty prefix so far), 1 copying a nonempty prefix, 2 copying
  // the suffix (accepting), 3 done (accepting).
  Nfa edge(t2, 4);
  edge.set_accepting(2);
  edge.set_accepting(3);
  for (Symbol g : gamma) {
    edge.add_transition(0, col(g, g), 1);
    edge.add_transition(1, col(g, g), 1);
    edge.add_transition(2, col(g, g), 2);
  }
  for (const auto& r : tm.rules) {
    const Symbol q = b->at(r.state), a = b->at(r.read), nq = b->at(r.next), w = b->at(r.write);
    if (r.move == 'R') {
      // u q a v  ->  u w nq v, or u w nq blank when v is empty
      const State s1 = edge.add_state(), s2 = edge.add_state();
      edge.add_transition(0, col(q, w), s1);
      edge.add_transition(1, col(q, w), s1);
      edge.add_transition(s1, col(a, nq), s2);
      for (Symbol g : gamma) edge.add_transition(s2, col(g, g), 2);
      edge.add_transition(s2, col(pad, blank), 3);
      continue;
    }
    // u d q a v  ->  u nq d w v, dropping w when it is a trailing blank
    for (Symbol d : gamma) {
      const State s1 = edge.add_state(), s2 = edge.add_state();
      edge.add_transition(0, col(d, nq), s1);
      edge.add_transition(1, col(d, nq), s1);
      edge.add_transition(s1, col(q, d), s2);
      edge.add_transition(s2, col(a, w), 2);
      if (w == blank) edge.add_transition(s2, col(a, pad), 3);
    }
    // head on the first cell stays put: q a v -> nq w v
    const State s1 = edge.add_state();
    edge.add_transition(0, col(q, nq), s1);
    edge.add_transition(s1, col(a, w), 2);
  }
  p.add_relation("Edge", RegularRelation(b, 2, minimize(determinize(edge))));
  return p;
}

Word encode_configuration(const Presentation& space, const TuringMachine& tm, const Configuration& c) {
  const auto& b = *space.base();
  std::vector<std::string> tape = c.tape;
  if (tape.size() <= c.head) tape.resize(c.head + 1, tm.blank);
  std::size_t end = tape.size();
  while (end > c.head + 1 && tape[end - 1] == tm.blank) --end;
  Word w;
  for (std::size_t i = 0; i < c.head; ++i) w.push_back(b.at(tape[i]));
  w.push_back(b.at(c.state));
  for (std::size_t i = c.head; i < end; ++i) w.push_back(b.at(tape[i]));
  return w;
}

Configuration initial_configuration(const TuringMachine& tm, const std::vector<std::string>& input) {
  Configuration c;
  c.tape = input;
  c.head = 0;
  c.state = tm.initial;
  return c;
}

}  // namespace autostruct
