#include "autostruct/order_analysis.hpp"

#include <sstream>

#include "autostruct/constructions.hpp"
#include "autostruct/error.hpp"

namespace autostruct {

namespace {

// Working copy holding only Le and its strict part Lt, so formulas below can
// use fixed names whatever else the input carries.
Presentation working(const Presentation& p, const OrderOptions& o) {
  const auto& le = p.relation(o.order);
  if (le.arity() != 2) throw CompileError("order relation '" + o.order + "' is not binary");
  Presentation w(p.base(), p.domain_dfa());
  w.add_relation("Le", le);
  w.add_relation("Lt", subtract(le, equality_relation(p.base())));
  return w;
}

Presentation restrict_to(const Presentation& w, const RegularRelation& dom) {
  Presentation out(w.base(), dom.dfa());
  out.add_relation("Le", w.relation("Le"));
  out.add_relation("Lt", w.relation("Lt"));
  return out;
}

RegularRelation unary(const Presentation& w, std::string_view text, const CompileOptions& c) {
  auto f = compile(w, text, c);
  if (f.is_sentence()) return f.truth ? w.domain() : subtract(w.domain(), w.domain());
  return *f.relation;
}

void check(const Presentation& w, const char* axiom, std::string_view sentence, const CompileOptions& c) {
  if (!decide(w, sentence, c)) throw PreconditionFailed("order is not linear: " + std::string(axiom) + " fails", axiom);
}

bool dense(const Presentation& w, const CompileOptions& c) {
  return decide(w, "A x. A y. (Lt(x, y) -> E z. (Lt(x, z) & Lt(z, y)))", c);
}

RegularRelation eqf(const Presentation& w, const CompileOptions& c) {
  auto f = compile(w, "~(EI z. ((Lt(x, z) & Lt(z, y)) | (Lt(y, z) & Lt(z, x))))", c);
  return *f.relation;
}

Presentation eqf_quotient(const Presentation& w, const CompileOptions& c) {
  return restrict_to(w, representatives(w, eqf(w, c), c));
}

// Every ≡_F class is finite or of type ω.
bool classes_well_ordered(const Presentation& w, const RegularRelation& e, const CompileOptions& c) {
  auto wx = w.with_relation("EqF", e);
  return decide(wx, "A x. ~(EI y. (EqF(x, y) & Lt(y, x)))", c);
}

struct Iteration {
  std::size_t rank = 0;
  Presentation last;
  bool ordinal = true;
};

Iteration iterate(const Presentation& p, const OrderOptions& o, bool track_ordinal) {
  Iteration it{0, working(p, o), true};
  while (true) {
    const bool is_dense = dense(it.last, o.compile);
    if (is_dense && !track_ordinal) break;
    auto e = eqf(it.last, o.compile);
    if (track_ordinal && it.ordinal && !classes_well_ordered(it.last, e, o.compile)) it.ordinal = false;
    if (is_dense) break;
    if (it.rank == o.iteration_cap)
      throw ResourceLimit("≡_F quotient iteration cap (" + std::to_string(o.iteration_cap) + ") exceeded");
    it.last = restrict_to(it.last, representatives(it.last, e, o.compile));
    ++it.rank;
  }
  return it;
}

bool at_most_one(const Presentation& w) {
  auto n = language_size(w.domain_dfa());
  return n && *n <= 1;
}

std::vector<std::uint64_t> cnf_of(const Presentation& p, const OrderOptions& o) {
  auto w = working(p, o);
  std::vector<std::uint64_t> out;
  while (true) {
    // Finite tail: elements with finitely many above.
    auto tail = unary(w, "~(EI y. Lt(x, y))", o.compile);
    auto n = language_size(tail.dfa());
    if (!n) throw PreconditionFailed("order is not an ordinal: infinite final segment", "well-order");
    out.push_back(*n);
    // Limit points outside the tail, counting the least element as one.
    auto limits = unary(w, "~(E y. (Lt(y, x) & ~(E z. (Lt(y, z) & Lt(z, x))))) & EI y. Lt(x, y)", o.compile);
    if (is_empty(limits.dfa())) break;
    if (out.size() > o.iteration_cap)
      throw ResourceLimit("Cantor normal form depth cap (" + std::to_string(o.iteration_cap) + ") exceeded");
    w = restrict_to(w, limits);
  }
  return out;
}

}  // namespace

bool is_linear(const Presentation& p, const OrderOptions& options) {
  try {
    check_linear(p, options);
    return true;
  } catch (const PreconditionFailed&) {
    return false;
  }
}

void check_linear(const Presentation& p, const OrderOptions& options) {
  auto w = working(p, options);
  const auto& c = options.compile;
  check(w, "reflexivity", "A x. Le(x, x)", c);
  check(w, "antisymmetry", "A x. A y. (Le(x, y) & Le(y, x) -> x = y)", c);
  check(w, "transitivity", "A x. A y. A z. (Le(x, y) & Le(y, z) -> Le(x, z))", c);
  check(w, "totality", "A x. A y. (Le(x, y) | Le(y, x))", c);
}

bool is_dense(const Presentation& p, const OrderOptions& options) {
  return dense(working(p, options), options.compile);
}

RegularRelation finite_distance(const Presentation& p, const OrderOptions& options) {
  return eqf(working(p, options), options.compile);
}

Presentation quotient_by_eqF(const Presentation& p, const OrderOptions& options) {
  auto q = eqf_quotient(working(p, options), options.compile);
  Presentation out(q.base(), q.domain_dfa());
  out.add_relation(options.order, q.relation("Le"));
  return out;
}

std::size_t cb_rank(const Presentation& p, const OrderOptions& options) { return iterate(p, options, false).rank; }

bool is_scattered(const Presentation& p, const OrderOptions& options) {
  return at_most_one(iterate(p, options, false).last);
}

RegularRelation dense_suborder(const Presentation& p, const OrderOptions& options) {
  return iterate(p, options, false).last.domain();
}

bool is_ordinal(const Presentation& p, const OrderOptions& options) {
  auto it = iterate(p, options, true);
  return it.ordinal && at_most_one(it.last);
}

std::vector<std::uint64_t> cantor_normal_form(const Presentation& p, const OrderOptions& options) {
  if (!is_ordinal(p, options)) throw PreconditionFailed("order is not an ordinal", "well-order");
  return cnf_of(p, options);
}

bool ordinals_isomorphic(const Presentation& a, const Presentation& b, const OrderOptions& options) {
  return cantor_normal_form(a, options) == cantor_normal_form(b, options);
}

OrderReport analyze_order(const Presentation& p, const OrderOptions& options) {
  check_linear(p, options);
  OrderReport r;
  r.linear = true;
  auto it = iterate(p, options, true);
  r.dense = it.rank == 0;
  r.cb_rank = it.rank;
  r.scattered = at_most_one(it.last);
  r.ordinal = it.ordinal && r.scattered;
  if (r.ordinal) r.cnf = cnf_of(p, options);
  return r;
}

std::string format_report(const OrderReport& r) {
  std::ostringstream out;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "linear: " << flag(r.linear) << '\n';
  out << "dense: " << flag(r.dense) << '\n';
  out << "cb_rank: " << r.cb_rank << '\n';
  out << "scattered: " << flag(r.scattered) << '\n';
  out << "ordinal: " << flag(r.ordinal) << '\n';
  if (r.ordinal) {
    out << "cnf:";
    for (auto a : r.cnf) out << ' ' << a;
    out << '\n';
  }
  return out.str();
}

}  // namespace autostruct
