#include "autostruct/aut_format.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw FormatError("line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_index(std::size_t line, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + tok + "'");
  }
}

}  // namespace

AutFile parse_aut(std::string_view text) {
  AlphabetPtr base;
  int arity = 1;
  std::string pad = "_";
  std::optional<std::size_t> states;
  std::optional<std::size_t> initial;
  std::vector<std::size_t> accepting;
  struct Trans {
    std::size_t line, from, to;
    std::string symbol;
  };
  std::vector<Trans> trans;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail(lineno, "expected 'key: value'");
    const std::string key(trim(line.substr(0, colon)));
    const auto rest = line.substr(colon + 1);
    const auto toks = split_ws(rest);
    if (key == "alphabet") {
      if (base) fail(lineno, "duplicate alphabet");
      try {
        base = Alphabet::make(toks);
      } catch (const InvalidArgument& e) {
        fail(lineno, e.what());
      }
    } else if (key == "tracks") {
      if (toks.empty()) fail(lineno, "tracks needs an arity");
      arity = static_cast<int>(parse_index(lineno, toks[0]));
      if (arity < 1) fail(lineno, "arity must be positive");
      if (toks.size() == 3 && toks[1] == "pad")
        pad = toks[2];
      else if (toks.size() != 1)
        fail(lineno, "expected 'tracks: k pad SYMBOL'");
    } else if (key == "states") {
      if (toks.size() != 1) fail(lineno, "states needs one count");
      states = parse_index(lineno, toks[0]);
    } else if (key == "initial") {
      if (toks.size() != 1) fail(lineno, "initial needs one state");
      initial = parse_index(lineno, toks[0]);
    } else if (key == "accepting") {
      for (const auto& t : toks) accepting.push_back(parse_index(lineno, t));
    } else if (key == "trans") {
      if (toks.size() != 4 || toks[2] != "->") fail(lineno, "expected 'trans: q symbol -> r'");
      trans.push_back({lineno, parse_index(lineno, toks[0]), parse_index(lineno, toks[3]), toks[1]});
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!base) throw FormatError("missing alphabet");
  if (!states || *states == 0) throw FormatError("missing or zero state count");
  if (!initial) throw FormatError("missing initial state");
  if (*initial >= *states) throw FormatError("initial state out of range");

  AlphabetPtr alpha;
  try {
    alpha = Alphabet::tracks(base, arity);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  // One extra state serves as the sink for missing transitions.
  Nfa nfa(alpha, *states + 1, static_cast<State>(*initial));
  for (auto q : accepting) {
    if (q >= *states) throw FormatError("accepting state " + std::to_string(q) + " out of range");
    nfa.set_accepting(static_cast<State>(q));
  }
  for (const auto& t : trans) {
    if (t.from >= *states || t.to >= *states) fail(t.line, "state out of range");
    std::string name = t.symbol;
    if (arity > 1 && pad != "_") {
      std::string rebuilt;
      std::size_t s = 0;
      while (true) {
        auto bar = name.find('|', s);
        std::string part = name.substr(s, bar == std::string::npos ? std::string::npos : bar - s);
        rebuilt += part == pad ? "_" : part;
        if (bar == std::string::npos) break;
        rebuilt += '|';
        s = bar + 1;
      }
      name = rebuilt;
    }
    auto sym = alpha->find(name);
    if (!sym) fail(t.line, "unknown symbol '" + t.symbol + "'");
    nfa.add_transition(static_cast<State>(t.from), *sym, static_cast<State>(t.to));
  }
  return {base, arity, std::move(nfa)};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

AutFile load_aut(const std::filesystem::path& path) {
  try {
    return parse_aut(read_text_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

RegularRelation relation_from_aut(const AutFile& file, const AlphabetPtr& base) {
  if (base && !same_alphabet(base, file.base))
    throw AlphabetMismatch("automaton alphabet differs from the structure alphabet");
  const AlphabetPtr& b = base ? base : file.base;
  Dfa d = determinize(file.automaton);
  if (b != file.base) {
    // Rebind the table to the caller's (equal) alphabet object.
    std::vector<State> delta;
    std::vector<char> acc;
    for (State q = 0; q < d.num_states(); ++q) {
      acc.push_back(d.accepting(q) ? 1 : 0);
      for (State r : d.row(q)) delta.push_back(r);
    }
    d = Dfa(Alphabet::tracks(b, file.arity), d.num_states(), d.initial(), std::move(delta),
            std::move(acc));
  }
  return RegularRelation(b, file.arity, d);
}

std::string format_aut(const Dfa& input) {
  const Dfa dfa = minimize(input);
  const auto& alpha = *dfa.alphabet();
  const auto co = coreachable(dfa);
  std::ostringstream out;
  const auto base = alpha.base();
  out << "alphabet:";
  for (const auto& n : base->names()) out << ' ' << n;
  out << '\n';
  if (alpha.is_track()) out << "tracks: " << alpha.arity() << " pad _\n";
  // Minimal DFAs have at most one dead state; drop it.
  std::vector<State> id(dfa.num_states(), 0);
  std::size_t n = 0;
  for (State q = 0; q < dfa.num_states(); ++q)
    if (co[q] || q == dfa.initial()) id[q] = static_cast<State>(n++);
  out << "states: " << n << '\n';
  out << "initial: " << id[dfa.initial()] << '\n';
  out << "accepting:";
  for (State q = 0; q < dfa.num_states(); ++q)
    if (dfa.accepting(q)) out << ' ' << id[q];
  out << '\n';
  for (State q = 0; q < dfa.num_states(); ++q) {
    if (!co[q]) continue;
    for (Symbol a = 0; a < dfa.num_symbols(); ++a) {
      const State r = dfa.next(q, a);
      if (co[r]) out << "trans: " << id[q] << ' ' << alpha.name(a) << " -> " << id[r] << '\n';
    }
  }
  return out.str();
}

std::string format_aut(const RegularRelation& r) { return format_aut(r.dfa()); }

std::string to_dot(const Dfa& dfa, std::string_view name) {
  const auto& alpha = *dfa.alphabet();
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State q = 0; q < dfa.num_states(); ++q)
    out << "  q" << q << " [shape=" << (dfa.accepting(q) ? "doublecircle" : "circle")
        << ", label=\"" << q << "\"];\n";
  out << "  start -> q" << dfa.initial() << ";\n";
  for (State q = 0; q < dfa.num_states(); ++q) {
    std::map<State, std::string> labels;
    for (Symbol a = 0; a < dfa.num_symbols(); ++a) {
      auto& l = labels[dfa.next(q, a)];
      if (!l.empty()) l += ",";
      l += alpha.name(a);
    }
    for (const auto& [r, l] : labels) out << "  q" << q << " -> q" << r << " [label=\"" << l << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace autostruct
