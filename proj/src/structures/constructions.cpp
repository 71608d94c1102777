#include "autostruct/constructions.hpp"

#include <algorithm>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

using Column = std::span<const std::uint32_t>;

constexpr std::uint32_t kDone = 0xffffffffu;
constexpr std::uint32_t kNone = 0xfffffffeu;

std::vector<std::string> merged_names(const Alphabet& a, const Alphabet& b) {
  auto names = a.names();
  for (const auto& n : b.names())
    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
  return names;
}

// Maps digits of `combined` (pad included) to digits of `side`.
std::vector<std::uint32_t> digit_map(const Alphabet& combined, const Alphabet& side) {
  std::vector<std::uint32_t> map(combined.size() + 1, kNone);
  for (Symbol s = 0; s < side.size(); ++s) map[combined.at(side.name(s))] = s;
  map[combined.size()] = pad_digit(side);
  return map;
}

// Feeds one column to a component automaton, handling its end. Returns
// false on rejection.
bool feed(const RegularRelation& r, std::uint32_t& state, const std::vector<std::uint32_t>& digits) {
  const auto pad = pad_digit(*r.base());
  const bool all_pad = std::all_of(digits.begin(), digits.end(), [pad](auto d) { return d == pad; });
  if (all_pad) {
    if (state == kDone) return true;
    if (!r.dfa().accepting(state)) return false;
    state = kDone;
    return true;
  }
  if (state == kDone) return false;
  state = r.dfa().next(state, encode_column(*r.base(), digits));
  return true;
}

bool finished(const RegularRelation& r, std::uint32_t state) {
  return state == kDone || r.dfa().accepting(state);
}

struct Interleaving {
  AlphabetPtr base;
  Symbol filler;
  std::vector<std::uint32_t> pmap, qmap;
};

Interleaving interleaving(const Presentation& p, const Presentation& q) {
  auto names = merged_names(*p.base(), *q.base());
  const auto filler = fresh_symbol_name(names, {"-", "~", "*", "^"});
  names.push_back(filler);
  Interleaving il;
  il.base = Alphabet::make(names);
  il.filler = il.base->at(filler);
  il.pmap = digit_map(*il.base, *p.base());
  il.qmap = digit_map(*il.base, *q.base());
  il.pmap[il.filler] = pad_digit(*p.base());
  il.qmap[il.filler] = pad_digit(*q.base());
  return il;
}

// Tuples of interleaved pairs whose first components satisfy rp and second
// components satisfy rq. With `check_rounds` the key also carries the filler
// and pad masks of the last even column, so that no pair is all filler and
// pads start on pair boundaries; relations skip this and rely on the domain.
RegularRelation interleaved(const Interleaving& il, int k, const RegularRelation& rp, const RegularRelation& rq,
                            bool check_rounds) {
  const auto pad = pad_digit(*il.base);
  StateKey init{0, rp.dfa().initial(), rq.dfa().initial()};
  if (check_rounds) init.insert(init.end(), {0, 0});
  std::vector<std::uint32_t> digits(k);
  auto step = [&](const StateKey& s, Column c, StateKey& out) {
    out = s;
    if (s[0] == 0) {
      std::uint32_t fill = 0, pads = 0;
      for (int t = 0; t < k; ++t) {
        if (c[t] == pad) pads |= 1u << t;
        if (c[t] == il.filler) fill |= 1u << t;
        digits[t] = il.pmap[c[t]];
        if (digits[t] == kNone) return false;
      }
      if (!feed(rp, out[1], digits)) return false;
      out[0] = 1;
      if (check_rounds) {
        out[3] = fill;
        out[4] = pads;
      }
      return true;
    }
    for (int t = 0; t < k; ++t) {
      if (check_rounds) {
        const bool was_pad = (s[4] >> t) & 1u;
        if (was_pad != (c[t] == pad)) return false;
        if (c[t] == il.filler && ((s[3] >> t) & 1u)) return false;
      }
      digits[t] = il.qmap[c[t]];
      if (digits[t] == kNone) return false;
    }
    if (!feed(rq, out[2], digits)) return false;
    out[0] = 0;
    if (check_rounds) out[3] = out[4] = 0;
    return true;
  };
  auto accept = [&](const StateKey& s) { return s[0] == 0 && finished(rp, s[1]) && finished(rq, s[2]); };
  return build_relation(il.base, k, init, step, accept);
}

struct Tagging {
  AlphabetPtr base;
  Symbol left, right;
  std::vector<std::uint32_t> pmap, qmap;
};

Tagging tagging(const Presentation& p, const Presentation& q) {
  auto names = merged_names(*p.base(), *q.base());
  const auto left = fresh_symbol_name(names, {"<", "[", "L"});
  names.push_back(left);
  const auto right = fresh_symbol_name(names, {">", "]", "R"});
  names.push_back(right);
  Tagging tg;
  tg.base = Alphabet::make(names);
  tg.left = tg.base->at(left);
  tg.right = tg.base->at(right);
  tg.pmap = digit_map(*tg.base, *p.base());
  tg.qmap = digit_map(*tg.base, *q.base());
  return tg;
}

// Tuples of `tag`-prefixed words whose untagged parts satisfy r.
RegularRelation tagged(const Tagging& tg, int k, Symbol tag, const std::vector<std::uint32_t>& map,
                       const RegularRelation& r) {
  std::vector<std::uint32_t> digits(k);
  auto step = [&](const StateKey& s, Column c, StateKey& out) {
    if (s[0] == 0) {
      for (int t = 0; t < k; ++t)
        if (c[t] != tag) return false;
      out = {1, r.dfa().initial()};
      return true;
    }
    out = s;
    for (int t = 0; t < k; ++t) {
      digits[t] = map[c[t]];
      if (digits[t] == kNone) return false;
    }
    return feed(r, out[1], digits);
  };
  auto accept = [&](const StateKey& s) { return s[0] == 1 && finished(r, s[1]); };
  return build_relation(tg.base, k, {0}, step, accept);
}

void require_same_signature(const Presentation& p, const Presentation& q) {
  for (const auto& sym : p.signature())
    if (!q.has_relation(sym.name) || q.arity(sym.name) != sym.arity)
      throw InvalidArgument("signature mismatch: '" + sym.name + "' is missing or has another arity");
  if (p.signature().size() != q.signature().size())
    throw InvalidArgument("signature mismatch: the presentations have different relation symbols");
}

void require_order(const Presentation& p, const std::string& order) {
  if (!p.has_relation(order) || p.arity(order) != 2)
    throw InvalidArgument("expected a binary relation '" + order + "'");
}

RegularRelation strict(const Presentation& p, const RegularRelation& le) {
  return subtract(le, intersect(equality_relation(p.base()), p.domain_power(2)));
}

std::string fresh_relation_name(const Presentation& p, std::string name) {
  while (p.has_relation(name)) name += "_";
  return name;
}

}  // namespace

Presentation product_presentation(const Presentation& p, const Presentation& q) {
  require_same_signature(p, q);
  const auto il = interleaving(p, q);
  Presentation out(il.base, interleaved(il, 1, p.domain(), q.domain(), true).dfa());
  for (const auto& sym : p.signature())
    out.add_relation(sym.name, interleaved(il, sym.arity, p.relation(sym.name), q.relation(sym.name), false));
  return out;
}

Word interleave(const Presentation& product, const Presentation& p, const Presentation& q, const Word& u,
                const Word& v) {
  const auto& base = *product.base();
  const auto filler = base.size() - 1;
  Word w;
  for (std::size_t i = 0; i < std::max(u.size(), v.size()); ++i) {
    w.push_back(i < u.size() ? base.at(p.base()->name(u[i])) : static_cast<Symbol>(filler));
    w.push_back(i < v.size() ? base.at(q.base()->name(v[i])) : static_cast<Symbol>(filler));
  }
  return w;
}

Presentation disjoint_union(const Presentation& p, const Presentation& q) {
  require_same_signature(p, q);
  const auto tg = tagging(p, q);
  Presentation out(tg.base, unite(tagged(tg, 1, tg.left, tg.pmap, p.domain()),
                                  tagged(tg, 1, tg.right, tg.qmap, q.domain()))
                                .dfa());
  for (const auto& sym : p.signature())
    out.add_relation(sym.name, unite(tagged(tg, sym.arity, tg.left, tg.pmap, p.relation(sym.name)),
                                     tagged(tg, sym.arity, tg.right, tg.qmap, q.relation(sym.name))));
  return out;
}

Presentation ordered_sum(const Presentation& p, const Presentation& q, const std::string& order) {
  require_order(p, order);
  require_order(q, order);
  const auto tg = tagging(p, q);
  Presentation out(tg.base, unite(tagged(tg, 1, tg.left, tg.pmap, p.domain()),
                                  tagged(tg, 1, tg.right, tg.qmap, q.domain()))
                                .dfa());
  auto across = build_relation(
      tg.base, 2, {0},
      [&](const StateKey& s, Column c, StateKey& out_key) {
        if (s[0] == 0 && (c[0] != tg.left || c[1] != tg.right)) return false;
        out_key = {1};
        return true;
      },
      [](const StateKey& s) { return s[0] == 1; });
  auto le = unite(unite(tagged(tg, 2, tg.left, tg.pmap, p.relation(order)),
                        tagged(tg, 2, tg.right, tg.qmap, q.relation(order))),
                  across);
  out.add_relation(order, le);
  return out;
}

Presentation lexicographic_product(const Presentation& major, const Presentation& minor, const std::string& order) {
  require_order(major, order);
  require_order(minor, order);
  const auto il = interleaving(major, minor);
  Presentation out(il.base, interleaved(il, 1, major.domain(), minor.domain(), true).dfa());
  const auto& le_major = major.relation(order);
  const auto eq_major = intersect(equality_relation(major.base()), major.domain_power(2));
  auto le = unite(interleaved(il, 2, strict(major, le_major), minor.domain_power(2), false),
                  interleaved(il, 2, eq_major, minor.relation(order), false));
  out.add_relation(order, le);
  return out;
}

Presentation reverse_order(const Presentation& p, const std::string& order) {
  require_order(p, order);
  Presentation out(p.base(), p.domain_dfa());
  for (const auto& sym : p.signature()) {
    if (sym.name == order)
      out.add_relation(order, rearrange(p.relation(order), {1, 0}));
    else
      out.add_relation(sym.name, p.relation(sym.name));
  }
  return out;
}

RegularRelation representatives(const Presentation& p, const RegularRelation& e, const CompileOptions& options) {
  if (e.arity() != 2) throw InvalidArgument("an equivalence relation must be binary");
  const auto ename = fresh_relation_name(p, "E");
  const auto lname = fresh_relation_name(p, "Before");
  auto w = p.with_relation(ename, e).with_relation(lname, strict(p, llex_relation(p.base())));
  using namespace fo;
  auto f = negation(exists("y", conjunction(atom(lname, {"y", "x"}), atom(ename, {"x", "y"}))));
  return *compile(w, *f, options).relation;
}

Presentation quotient(const Presentation& p, const RegularRelation& e, const QuotientOptions& options) {
  if (e.arity() != 2) throw InvalidArgument("an equivalence relation must be binary");
  require_same_alphabet(p.base(), e.base(), "quotient");
  const auto ename = fresh_relation_name(p, "E");
  auto w = p.with_relation(ename, e);
  using namespace fo;
  auto ex = [&](const char* a, const char* b) { return atom(ename, {a, b}); };
  if (!decide(w, *forall("x", ex("x", "x")), options.compile))
    throw PreconditionFailed("equivalence is not reflexive", "reflexivity");
  if (!decide(w, *forall("x", forall("y", implication(ex("x", "y"), ex("y", "x")))), options.compile))
    throw PreconditionFailed("equivalence is not symmetric", "symmetry");
  if (!decide(w,
              *forall("x", forall("y", forall("z", implication(conjunction(ex("x", "y"), ex("y", "z")),
                                                                 ex("x", "z"))))),
              options.compile))
    throw PreconditionFailed("equivalence is not transitive", "transitivity");

  auto vars = [](const char* prefix, int k) {
    std::vector<std::string> v;
    for (int i = 1; i <= k; ++i) v.push_back(prefix + std::to_string(i));
    return v;
  };
  // E(x_i, y_i) for all i.
  auto linked = [&](int k) {
    const auto xs = vars("x", k), ys = vars("y", k);
    FormulaPtr f = atom(ename, {xs[0], ys[0]});
    for (int i = 1; i < k; ++i) f = conjunction(f, atom(ename, {xs[i], ys[i]}));
    return f;
  };

  if (options.mode == QuotientMode::restrict && options.require_congruence) {
    for (const auto& sym : p.signature()) {
      const int k = sym.arity;
      FormulaPtr f = implication(linked(k), equivalence(atom(sym.name, vars("x", k)), atom(sym.name, vars("y", k))));
      for (const auto& v : vars("y", k)) f = forall(v, f);
      for (const auto& v : vars("x", k)) f = forall(v, f);
      if (!decide(w, *f, options.compile))
        throw PreconditionFailed("equivalence is not a congruence for '" + sym.name + "'", "congruence " + sym.name);
    }
  }

  const auto rep = representatives(p, e, options.compile);
  Presentation out(p.base(), rep.dfa());
  for (const auto& sym : p.signature()) {
    if (options.mode == QuotientMode::restrict) {
      out.add_relation(sym.name, p.relation(sym.name));
      continue;
    }
    const int k = sym.arity;
    FormulaPtr f = conjunction(linked(k), atom(sym.name, vars("y", k)));
    for (const auto& v : vars("y", k)) f = exists(v, f);
    auto c = compile(w, *f, options.compile);
    out.add_relation(sym.name, *c.relation);
  }
  return out;
}

}  // namespace autostruct
