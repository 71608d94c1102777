#include "autostruct/builtins.hpp"

#include <charconv>
#include <sstream>

#include "autostruct/constructions.hpp"
#include "autostruct/error.hpp"

namespace autostruct {

namespace {

using Column = std::span<const std::uint32_t>;

bool always(const StateKey&) { return true; }

// DFA from explicit rows; `rows[q][a]` is the successor.
Dfa table(const AlphabetPtr& alpha, const std::vector<std::vector<State>>& rows,
          const std::vector<char>& accepting) {
  std::vector<State> delta;
  for (const auto& r : rows) delta.insert(delta.end(), r.begin(), r.end());
  return minimize(Dfa(alpha, rows.size(), 0, std::move(delta), accepting));
}

// {"0"} ∪ {0,1}*1
Dfa binary_naturals(const AlphabetPtr& b) {
  // 0 start, 1 "0", 2 ends in 1, 3 ends in 0 after a longer prefix
  return table(b, {{1, 2}, {3, 2}, {3, 2}, {3, 2}}, {0, 1, 1, 0});
}

RegularRelation binary_add(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  auto bit = [pad](std::uint32_t d) { return d == pad ? 0u : d; };
  return build_relation(
      b, 3, {0},
      [bit](const StateKey& s, Column c, StateKey& out) {
        const std::uint32_t sum = bit(c[0]) + bit(c[1]) + s[0];
        if (sum % 2 != bit(c[2])) return false;
        out = {sum / 2};
        return true;
      },
      [](const StateKey& s) { return s[0] == 0; });
}

RegularRelation binary_le(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  // 0 equal so far, 1 less, 2 greater; later digits are more significant.
  return build_relation(
      b, 2, {0},
      [pad](const StateKey& s, Column c, StateKey& out) {
        const std::uint32_t x = c[0] == pad ? 0 : c[0];
        const std::uint32_t y = c[1] == pad ? 0 : c[1];
        out = {x < y ? 1u : x > y ? 2u : s[0]};
        return true;
      },
      [](const StateKey& s) { return s[0] != 2; });
}

RegularRelation unary_le(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  return build_relation(
      b, 2, {0},
      [pad](const StateKey&, Column c, StateKey& out) {
        if (c[1] == pad) return false;
        out = {c[0] == pad ? 1u : 0u};
        return true;
      },
      always);
}

RegularRelation unary_succ(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  return build_relation(
      b, 2, {0},
      [pad](const StateKey& s, Column c, StateKey& out) {
        if (s[0] == 1 || c[1] == pad) return false;
        out = {c[0] == pad ? 1u : 0u};
        return true;
      },
      [](const StateKey& s) { return s[0] == 1; });
}

// y = x·a for a fixed symbol a.
RegularRelation append_symbol(const AlphabetPtr& b, Symbol a) {
  const auto pad = pad_digit(*b);
  return build_relation(
      b, 2, {0},
      [pad, a](const StateKey& s, Column c, StateKey& out) {
        if (s[0] == 1) return false;
        if (c[0] == pad) {
          if (c[1] != a) return false;
          out = {1};
          return true;
        }
        if (c[0] != c[1]) return false;
        out = s;
        return true;
      },
      [](const StateKey& s) { return s[0] == 1; });
}

RegularRelation prefix_order(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  return build_relation(
      b, 2, {0},
      [pad](const StateKey& s, Column c, StateKey& out) {
        if (c[1] == pad) return false;
        if (c[0] == pad) {
          out = {1};
          return true;
        }
        if (s[0] == 1 || c[0] != c[1]) return false;
        out = s;
        return true;
      },
      always);
}

RegularRelation equal_length(const AlphabetPtr& b) {
  const auto pad = pad_digit(*b);
  return build_relation(
      b, 2, {0},
      [pad](const StateKey& s, Column c, StateKey& out) {
        if (c[0] == pad || c[1] == pad) return false;
        out = s;
        return true;
      },
      always);
}

// Lexicographic order where `rank` orders digits, the pad digit included.
RegularRelation lex_order(const AlphabetPtr& b, std::vector<std::uint32_t> rank) {
  return build_relation(
      b, 2, {0},
      [rank](const StateKey& s, Column c, StateKey& out) {
        if (s[0] == 1) {
          out = s;
          return true;
        }
        if (rank[c[0]] > rank[c[1]]) return false;
        out = {rank[c[0]] < rank[c[1]] ? 1u : 0u};
        return true;
      },
      always);
}

// Graph of a pointwise Boolean operation on bomega words. Per-track state:
// 0 not started, 1 reading bits, 2 ended with tail 0, 3 ended with tail 1.
RegularRelation bomega_graph(const AlphabetPtr& b, int arity,
                             std::function<bool(const std::vector<bool>&)> holds) {
  const auto pad = pad_digit(*b);
  enum : std::uint32_t { zero, one, fin, cof, full };
  return build_relation(
      b, arity, StateKey(arity, 0),
      [=](const StateKey& s, Column c, StateKey& out) {
        out = s;
        std::vector<bool> bits(arity);
        for (int t = 0; t < arity; ++t) {
          if (c[t] == pad) {
            if (s[t] == 1) return false;
            if (s[t] == 0) out[t] = 2;
            bits[t] = out[t] == 3;
            continue;
          }
          if (s[t] >= 2) return false;
          switch (c[t]) {
            case zero: out[t] = 1; bits[t] = false; break;
            case one: out[t] = 1; bits[t] = true; break;
            case fin: out[t] = 2; bits[t] = true; break;
            case cof: out[t] = 3; bits[t] = false; break;
            default:
              if (s[t] != 0) return false;
              out[t] = 3;
              bits[t] = true;
          }
        }
        return holds(bits);
      },
      [=](const StateKey& s) {
        std::vector<bool> tails;
        for (auto t : s) {
          if (t == 1) return false;
          tails.push_back(t == 3);
        }
        return holds(tails);
      });
}

RegularRelation singleton(const AlphabetPtr& b, const std::string& text) {
  return RegularRelation::from_language(Dfa::single_word(b, b->parse_word(text)));
}

std::string digit_name(unsigned i) { return std::to_string(i); }

std::vector<unsigned> parse_numbers(std::string_view text) {
  std::vector<unsigned> out;
  std::string s(text);
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw InvalidArgument("expected a non-negative integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Presentation presburger() {
  auto b = Alphabet::make({"0", "1"});
  Presentation p(b, binary_naturals(b));
  p.add_relation("Add", binary_add(b));
  p.add_relation("Le", binary_le(b));
  return p;
}

Presentation weak_div() {
  auto b = Alphabet::make({"0", "1"});
  const auto pad = pad_digit(*b);
  Presentation p(b, binary_naturals(b));
  p.add_relation("Add", binary_add(b));
  // 0 before the 1 of w (v must have 0 there), 1 after it.
  auto div = build_relation(
      b, 2, {0},
      [pad](const StateKey& s, Column c, StateKey& out) {
        if (s[0] == 1) {
          if (c[0] != pad) return false;
          out = s;
          return true;
        }
        if (c[0] == pad) return false;
        if (c[0] == 1) {
          out = {1};
          return true;
        }
        if (c[1] == 1) return false;
        out = s;
        return true;
      },
      [](const StateKey& s) { return s[0] == 1; });
  p.add_relation("Div", div);
  return p;
}

Presentation word_tree() {
  auto b = Alphabet::make({"0", "1"});
  Presentation p(b, Dfa::universal(b));
  p.add_relation("Le", prefix_order(b));
  p.add_relation("Left", append_symbol(b, 0));
  p.add_relation("Right", append_symbol(b, 1));
  p.add_relation("EqL", equal_length(b));
  return p;
}

Presentation rationals() {
  auto b = Alphabet::make({"0", "1"});
  // {0,1}*1
  Presentation p(b, table(b, {{0, 1}, {0, 1}}, {0, 1}));
  // pad < 0 < 1
  p.add_relation("Le", lex_order(b, {1, 2, 0}));
  return p;
}

Presentation unary_order() {
  auto b = Alphabet::make({"1"});
  Presentation p(b, Dfa::universal(b));
  p.add_relation("Le", unary_le(b));
  p.add_relation("S", unary_succ(b));
  return p;
}

Presentation unary_mod(unsigned n) {
  if (n == 0) throw InvalidArgument("unary_mod needs a positive modulus");
  Presentation p = unary_order();
  const auto& b = p.base();
  const auto pad = pad_digit(*b);
  // Difference of lengths mod n, counted once one side has ended.
  auto cong = build_relation(
      b, 2, {0},
      [pad, n](const StateKey& s, Column c, StateKey& out) {
        if (c[0] != pad && c[1] != pad) {
          out = s;
          return true;
        }
        out = {(s[0] + 1) % n};
        return true;
      },
      [](const StateKey& s) { return s[0] == 0; });
  p.add_relation("Cong", cong);
  return p;
}

Presentation bomega() {
  auto b = Alphabet::make({"0", "1", "F", "C", "W"});
  // 0 start, 1 reading bits, 2 ended, 3 sink
  Dfa domain = table(b,
                     {{1, 1, 2, 2, 2},
                      {1, 1, 2, 2, 3},
                      {3, 3, 3, 3, 3},
                      {3, 3, 3, 3, 3}},
                     {1, 0, 1, 0});
  Presentation p(b, domain);
  p.add_relation("Join", bomega_graph(b, 3, [](const std::vector<bool>& v) { return v[2] == (v[0] || v[1]); }));
  p.add_relation("Meet", bomega_graph(b, 3, [](const std::vector<bool>& v) { return v[2] == (v[0] && v[1]); }));
  p.add_relation("Compl", bomega_graph(b, 2, [](const std::vector<bool>& v) { return v[1] != v[0]; }));
  p.add_relation("Zero", singleton(b, ""));
  p.add_relation("One", singleton(b, "W"));
  return p;
}

Presentation ordinal(const std::vector<unsigned>& cnf) {
  if (cnf.empty()) throw InvalidArgument("ordinal needs at least one coefficient");
  if (cnf.size() > 1 && cnf.back() == 0)
    throw InvalidArgument("ordinal: the leading coefficient must be nonzero");
  const unsigned m = static_cast<unsigned>(cnf.size()) - 1;
  if (m > 9) throw InvalidArgument("ordinal: degree above 9 is not supported");

  std::vector<std::string> names{"+", "."};
  for (unsigned i = 1; i <= m; ++i) names.push_back(digit_name(i));
  auto b = Alphabet::make(names);
  const Symbol plus = 0, dot = 1;
  auto digit = [](unsigned i) -> Symbol { return i + 1; };

  std::vector<unsigned> exponent;  // per block, in order
  for (unsigned j = m + 1; j-- > 0;)
    for (unsigned c = 0; c < cnf[j]; ++c) exponent.push_back(j);
  const auto blocks = static_cast<State>(exponent.size());

  // Header states 0..blocks-1, then digit states per (exponent, coordinate).
  Nfa nfa(b, blocks == 0 ? 1 : blocks);
  std::vector<std::vector<State>> coord(m + 1);
  for (unsigned j = 0; j <= m; ++j)
    for (unsigned i = 0; i <= j; ++i) {
      State s = nfa.add_state();
      nfa.set_accepting(s);
      coord[j].push_back(s);
    }
  for (unsigned j = 0; j <= m; ++j)
    for (unsigned i = 0; i <= j; ++i)
      for (unsigned t = std::max(i, 1u); t <= j; ++t) nfa.add_transition(coord[j][i], digit(t), coord[j][t]);
  for (State h = 0; h < blocks; ++h) {
    if (h + 1 < blocks) nfa.add_transition(h, plus, h + 1);
    nfa.add_transition(h, dot, coord[exponent[h]][0]);
  }
  Presentation p(b, minimize(determinize(nfa)));

  // pad < "." < "+" < m < ... < 1
  std::vector<std::uint32_t> rank(b->size() + 1);
  rank[pad_digit(*b)] = 0;
  rank[dot] = 1;
  rank[plus] = 2;
  for (unsigned i = 1; i <= m; ++i) rank[digit(i)] = 3 + (m - i);
  p.add_relation("Le", lex_order(b, rank));
  return p;
}

Presentation builtin(std::string_view name) {
  std::string_view head = name, arg;
  bool has_arg = false;
  if (auto open = name.find('('); open != std::string_view::npos) {
    if (name.back() != ')') throw InvalidArgument("malformed builtin name '" + std::string(name) + "'");
    head = name.substr(0, open);
    arg = name.substr(open + 1, name.size() - open - 2);
    has_arg = true;
  } else if (auto colon = name.find(':'); colon != std::string_view::npos) {
    head = name.substr(0, colon);
    arg = name.substr(colon + 1);
    has_arg = true;
  }
  auto no_arg = [&](Presentation (*make)()) {
    if (has_arg) throw InvalidArgument("builtin '" + std::string(head) + "' takes no argument");
    return make();
  };
  if (head == "presburger") return no_arg(presburger);
  if (head == "weak_div") return no_arg(weak_div);
  if (head == "word_tree") return no_arg(word_tree);
  if (head == "rationals") return no_arg(rationals);
  if (head == "unary_order") return no_arg(unary_order);
  if (head == "bomega") {
    if (!has_arg) return bomega();
    auto n = parse_numbers(arg);
    if (n.size() != 1 || n[0] == 0) throw InvalidArgument("bomega takes a positive power");
    auto p = bomega();
    for (unsigned i = 1; i < n[0]; ++i) p = product_presentation(p, bomega());
    return p;
  }
  if (head == "unary_mod") {
    auto n = parse_numbers(arg);
    if (n.size() != 1) throw InvalidArgument("unary_mod takes one modulus");
    return unary_mod(n[0]);
  }
  if (head == "ordinal") return ordinal(parse_numbers(arg));
  throw InvalidArgument("unknown builtin '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"presburger", "weak_div", "word_tree", "rationals", "unary_order", "unary_mod(n)", "bomega", "bomega(n)",
          "ordinal(a0,a1,...)"};
}

}  // namespace autostruct
