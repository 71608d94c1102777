#include "autostruct/structure_analysis.hpp"

#include "autostruct/constructions.hpp"
#include "autostruct/error.hpp"

namespace autostruct {

namespace {

// Tree working copy: Le, Lt and the child relation S.
Presentation tree_working(const Presentation& p, const TreeOptions& o) {
  const auto& le = p.relation(o.order);
  if (le.arity() != 2) throw CompileError("order relation '" + o.order + "' is not binary");
  Presentation w(p.base(), p.domain_dfa());
  w.add_relation("Le", le);
  w.add_relation("Lt", subtract(le, equality_relation(p.base())));
  return w;
}

Presentation with_children(const Presentation& w, const CompileOptions& c) {
  return define_relation(w, "S", "Lt(x, y) & ~(E z. (Lt(x, z) & Lt(z, y)))", {"x", "y"}, c);
}

void require(const Presentation& w, const std::string& what, const std::string& axiom, std::string_view sentence,
             const CompileOptions& c) {
  if (!decide(w, sentence, c)) throw PreconditionFailed(what + ": " + axiom + " fails", axiom);
}

void check_tree(const Presentation& w, const CompileOptions& c) {
  const std::string what = "not a tree";
  require(w, what, "reflexivity", "A x. Le(x, x)", c);
  require(w, what, "antisymmetry", "A x. A y. (Le(x, y) & Le(y, x) -> x = y)", c);
  require(w, what, "transitivity", "A x. A y. A z. (Le(x, y) & Le(y, z) -> Le(x, z))", c);
  require(w, what, "root", "E r. A x. Le(r, x)", c);
  require(w, what, "linear predecessors", "A x. A y. A z. (Le(y, x) & Le(z, x) -> Le(y, z) | Le(z, y))", c);
  require(w, what, "finite predecessors", "A x. ~(EI y. Le(y, x))", c);
}

bool finitely_branching(const Presentation& ws, const CompileOptions& c) {
  return decide(ws, "A x. ~(EI y. S(x, y))", c);
}

RegularRelation path_of(const Presentation& ws, const CompileOptions& c) {
  auto w = define_relation(ws, "Inf", "EI y. Lt(x, y)", {"x"}, c);
  w.add_relation("Llt", subtract(llex_relation(w.base()), equality_relation(w.base())));
  // Every ancestor's child towards x is the llex-least child with infinitely
  // many descendants.
  auto f = compile(w,
                   "Inf(x) & A y. (Le(y, x) -> A z. A u. (S(y, z) & Le(z, x) & S(y, u) & Inf(u) & ~z = u -> "
                   "Llt(z, u)))",
                   c);
  return *f.relation;
}

// Boolean algebra working copy with the derived order Le(x, y) := x ∧ y = x.
Presentation ba_working(const Presentation& p, const CompileOptions& c) {
  const std::pair<const char*, int> sig[] = {{"Join", 3}, {"Meet", 3}, {"Compl", 2}, {"Zero", 1}, {"One", 1}};
  Presentation w(p.base(), p.domain_dfa());
  for (auto [name, arity] : sig) {
    if (!p.has_relation(name))
      throw PreconditionFailed(std::string("not a Boolean algebra: missing relation ") + name, "signature");
    if (p.arity(name) != arity)
      throw PreconditionFailed(std::string("not a Boolean algebra: ") + name + " must have arity " +
                                   std::to_string(arity),
                               "signature");
    w.add_relation(name, p.relation(name));
  }
  return define_relation(w, "Le", "Meet(x, y, x)", {"x", "y"}, c);
}

Presentation ba_index_working(const Presentation& p, const CompileOptions& c) {
  auto w = ba_working(p, c);
  w = define_relation(w, "Atom", "~Zero(x) & ~(E b. (Le(b, x) & ~Zero(b) & ~b = x))", {"x"}, c);
  // x \ y is finite: x ≤ y modulo the ideal of finite elements.
  return define_relation(w, "LeI", "~(EI a. (Atom(a) & Le(a, x) & ~Le(a, y)))", {"x", "y"}, c);
}

}  // namespace

bool is_po_tree(const Presentation& p, const TreeOptions& options) {
  try {
    check_po_tree(p, options);
    return true;
  } catch (const PreconditionFailed&) {
    return false;
  }
}

void check_po_tree(const Presentation& p, const TreeOptions& options) {
  check_tree(tree_working(p, options), options.compile);
}

RegularRelation children(const Presentation& p, const TreeOptions& options) {
  return with_children(tree_working(p, options), options.compile).relation("S");
}

bool is_finitely_branching(const Presentation& p, const TreeOptions& options) {
  auto w = tree_working(p, options);
  check_tree(w, options.compile);
  return finitely_branching(with_children(w, options.compile), options.compile);
}

RegularRelation koenig_path(const Presentation& p, const TreeOptions& options) {
  auto w = tree_working(p, options);
  check_tree(w, options.compile);
  auto ws = with_children(w, options.compile);
  if (!is_infinite(p.domain_dfa())) throw PreconditionFailed("the tree is finite", "infinite");
  if (!finitely_branching(ws, options.compile))
    throw PreconditionFailed("the tree is not finitely branching", "finitely branching");
  return path_of(ws, options.compile);
}

TreeReport analyze_tree(const Presentation& p, const TreeOptions& options) {
  auto w = tree_working(p, options);
  check_tree(w, options.compile);
  auto ws = with_children(w, options.compile);
  TreeReport r;
  r.finitely_branching = finitely_branching(ws, options.compile);
  r.infinite = is_infinite(p.domain_dfa());
  if (r.finitely_branching && r.infinite) r.path = path_of(ws, options.compile);
  return r;
}

void check_boolean_algebra(const Presentation& p, const BooleanOptions& options) {
  const auto& c = options.compile;
  // Le is only defined once the signature is in place.
  auto w = ba_working(p, c);
  const std::string what = "not a Boolean algebra";
  // Axioms are phrased as ~E ...(A & ~B) so no complement is taken against a
  // high domain power.
  require(w, what, "Join is total", "A x. A y. E z. Join(x, y, z)", c);
  require(w, what, "Join is a function", "~(E x. E y. E z. E u. (Join(x, y, z) & Join(x, y, u) & ~u = z))", c);
  require(w, what, "Meet is total", "A x. A y. E z. Meet(x, y, z)", c);
  require(w, what, "Meet is a function", "~(E x. E y. E z. E u. (Meet(x, y, z) & Meet(x, y, u) & ~u = z))", c);
  require(w, what, "Compl is total", "A x. E y. Compl(x, y)", c);
  require(w, what, "Compl is a function", "~(E x. E y. E u. (Compl(x, y) & Compl(x, u) & ~u = y))", c);
  require(w, what, "Zero is one element", "(E x. Zero(x)) & ~(E x. E y. (Zero(x) & Zero(y) & ~x = y))", c);
  require(w, what, "One is one element", "(E x. One(x)) & ~(E x. E y. (One(x) & One(y) & ~x = y))", c);
  require(w, what, "order reflexivity", "A x. Le(x, x)", c);
  require(w, what, "order antisymmetry", "~(E x. E y. (Le(x, y) & Le(y, x) & ~x = y))", c);
  require(w, what, "order transitivity", "~(E x. E y. E z. (Le(x, y) & Le(y, z) & ~Le(x, z)))", c);
  // Bounds and leastness are split so no complement of a 4-track relation is
  // needed.
  require(w, what, "Join is an upper bound", "~(E x. E y. E z. (Join(x, y, z) & ~(Le(x, z) & Le(y, z))))", c);
  require(w, what, "Join is the least upper bound",
          "~(E x. E y. E u. (Le(x, u) & Le(y, u) & ~(E z. (Join(x, y, z) & Le(z, u)))))", c);
  require(w, what, "Meet is a lower bound", "~(E x. E y. E z. (Meet(x, y, z) & ~(Le(z, x) & Le(z, y))))", c);
  require(w, what, "Meet is the greatest lower bound",
          "~(E x. E y. E u. (Le(u, x) & Le(u, y) & ~(E z. (Meet(x, y, z) & Le(u, z)))))", c);
  require(w, what, "Zero is least", "~(E x. E y. (Zero(x) & ~Le(x, y)))", c);
  require(w, what, "One is greatest", "~(E x. E y. (One(x) & ~Le(y, x)))", c);
  require(w, what, "complement",
          "~(E x. E y. (Compl(x, y) & ~((E o. (One(o) & Join(x, y, o))) & (E e. (Zero(e) & Meet(x, y, e))))))", c);
  // Cancellation characterizes distributive lattices.
  require(w, what, "distributivity",
          "~(E x. E y. E z. (~x = y & (E a. (Meet(x, z, a) & Meet(y, z, a))) & (E b. (Join(x, z, b) & Join(y, z, b)))))",
          c);
}

bool is_boolean_algebra(const Presentation& p, const BooleanOptions& options) {
  try {
    check_boolean_algebra(p, options);
    return true;
  } catch (const PreconditionFailed&) {
    return false;
  }
}

std::optional<std::uint64_t> atom_count(const Presentation& p, const BooleanOptions& options) {
  auto w = ba_index_working(p, options.compile);
  return language_size(w.relation("Atom").dfa());
}

unsigned bomega_index(const Presentation& p, const BooleanOptions& options) {
  const auto& c = options.compile;
  auto w = ba_index_working(p, c);
  // B_ω^n modulo the finite elements has 2^n elements.
  auto e = compile(w, "LeI(x, y) & LeI(y, x)", c);
  auto classes = language_size(representatives(w, *e.relation, c).dfa());
  if (!classes) throw PreconditionFailed("infinitely many classes modulo finite elements", "B_ω^n");
  unsigned n = 0;
  while ((std::uint64_t{1} << n) < *classes) {
    if (n == options.index_cap)
      throw ResourceLimit("B_ω^n index exceeds the cap " + std::to_string(options.index_cap));
    ++n;
  }
  if ((std::uint64_t{1} << n) != *classes)
    throw PreconditionFailed("class count modulo finite elements is not a power of two", "B_ω^n");
  return n;
}

bool ba_isomorphic(const Presentation& a, const Presentation& b, const BooleanOptions& options) {
  if (options.check_axioms) {
    check_boolean_algebra(a, options);
    check_boolean_algebra(b, options);
  }
  const auto n = bomega_index(a, options);
  if (n != bomega_index(b, options)) return false;
  return n != 0 || atom_count(a, options) == atom_count(b, options);
}

}  // namespace autostruct
