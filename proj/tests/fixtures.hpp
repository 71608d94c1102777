// Fixture structures shared by the test suites and the acceptance runner.
#pragma once

#include <random>

#include "autostruct/builtins.hpp"
#include "autostruct/compiler.hpp"
#include "autostruct/constructions.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace autostruct;

/// x ~ y iff `d` ends in the same state on x and y: a regular equivalence of
/// finite index.
inline RegularRelation state_equivalence(const AlphabetPtr& base, const Dfa& d) {
  const auto pad = pad_digit(*base);
  return build_relation(
      base, 2, {d.initial(), d.initial()},
      [&d, pad](const StateKey& s, std::span<const std::uint32_t> c, StateKey& out) {
        out = s;
        for (int t = 0; t < 2; ++t)
          if (c[t] != pad) out[t] = d.next(s[t], c[t]);
        return true;
      },
      [](const StateKey& s) { return s[0] == s[1]; });
}

/// ω* as the reversed unary order.
inline Presentation reverse_omega() { return reverse_order(unary_order()); }

/// ω* + ω.
inline Presentation zeta() {
  auto w = unary_order();
  Presentation plain(w.base(), w.domain_dfa());
  plain.add_relation("Le", w.relation("Le"));
  return ordered_sum(reverse_order(plain), plain);
}

/// Prefix order on 0* ∪ 1*: two infinite branches from the root.
inline Presentation two_branch_tree() {
  auto t = word_tree();
  auto b = t.base();
  // 0 start, 1 in 0*, 2 in 1*, 3 dead
  std::vector<State> delta{1, 2, 1, 3, 3, 2, 3, 3};
  Presentation p(b, minimize(Dfa(b, 4, 0, delta, {1, 1, 1, 0})));
  p.add_relation("Le", t.relation("Le"));
  return p;
}

/// ω^{<ω}: words over {0,1} ending in 1 plus the root, ordered by the
/// prefix order on blocks 0^n 1. Every node has infinitely many children.
inline Presentation omega_tree() {
  auto t = word_tree();
  auto b = t.base();
  // "" or ends in 1
  std::vector<State> delta{1, 2, 1, 2, 1, 2};
  Presentation p(b, minimize(Dfa(b, 3, 0, delta, {1, 0, 1})));
  p.add_relation("Le", t.relation("Le"));
  return p;
}

/// Finite tree: the prefix order on words of length <= 2.
inline Presentation finite_tree() {
  auto t = word_tree();
  auto b = t.base();
  std::vector<State> delta{1, 1, 2, 2, 3, 3, 3, 3};
  Presentation p(b, minimize(Dfa(b, 4, 0, delta, {1, 1, 1, 0})));
  p.add_relation("Le", t.relation("Le"));
  return p;
}

/// bomega with Compl replaced by the identity.
inline Presentation broken_bomega() {
  auto b = bomega();
  Presentation p(b.base(), b.domain_dfa());
  for (const auto& sym : b.signature())
    if (sym.name != "Compl") p.add_relation(sym.name, b.relation(sym.name));
  p.add_relation("Compl", intersect(equality_relation(b.base()), b.domain_power(2)));
  return p;
}

/// Relation Le that is a 3-cycle plus reflexive pairs on {a, b, c}.
inline Presentation cyclic() {
  auto base = Alphabet::make({"a", "b", "c"});
  auto words = [&](std::initializer_list<const char*> ws) {
    std::vector<Word> out;
    for (auto w : ws) out.push_back(base->parse_word(w));
    return out;
  };
  Nfa dom(base, 2);
  for (Symbol s = 0; s < 3; ++s) dom.add_transition(0, s, 1);
  dom.set_accepting(1);
  Presentation p(base, minimize(determinize(dom)));
  auto t2 = Alphabet::tracks(base, 2);
  Nfa le(t2, 2);
  for (const auto& pair : {words({"a", "a"}), words({"b", "b"}), words({"c", "c"}), words({"a", "b"}),
                           words({"b", "c"}), words({"c", "a"})}) {
    const std::uint32_t d[2] = {pair[0][0], pair[1][0]};
    le.add_transition(0, encode_column(*base, d), 1);
  }
  le.set_accepting(1);
  p.add_relation("Le", RegularRelation(base, 2, minimize(determinize(le))));
  return p;
}

}  // namespace fixture
