#include "autostruct/compiler.hpp"

#include <algorithm>

#include "autostruct/error.hpp"

namespace autostruct {

namespace {

struct Denotation {
  std::vector<std::string> vars;
  std::optional<RegularRelation> rel;
  bool truth = false;
};

int index_of(const std::vector<std::string>& v, const std::string& x) {
  auto it = std::find(v.begin(), v.end(), x);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

class Compiler {
 public:
  Compiler(const Presentation& p, const CompileOptions& options)
      : p_(p), limits_{options.state_cap} {}

  Denotation compile(const Formula& f) {
    try {
      Denotation d = dispatch(f);
      if (d.rel && d.rel->dfa().num_states() > limits_.max_states)
        throw ResourceLimit("automaton exceeds the state cap of " + std::to_string(limits_.max_states));
      return d;
    } catch (const ResourceLimit& e) {
      if (!e.subformula().empty()) throw;
      const std::string sub = to_string(f);
      throw ResourceLimit(std::string(e.what()) + " while compiling " + sub, sub);
    }
  }

 private:
  Denotation truth(bool b) {
    Denotation d;
    d.truth = b;
    return d;
  }

  Denotation relation(std::vector<std::string> vars, RegularRelation r) {
    Denotation d;
    d.vars = std::move(vars);
    d.rel.emplace(std::move(r));
    return d;
  }

  const RegularRelation& power(int k) { return p_.domain_power(k); }

  Word constant(const std::string& text) {
    Word w;
    try {
      w = p_.parse_element(text);
    } catch (const InvalidArgument& e) {
      throw CompileError("constant \"" + text + "\": " + e.what());
    }
    if (!p_.domain().contains({w})) throw CompileError("constant \"" + text + "\" is not in the domain");
    return w;
  }

  // The relation of `d` over `target`, which must contain d's variables.
  RegularRelation lift(const Denotation& d, const std::vector<std::string>& target) {
    const int k = static_cast<int>(target.size());
    if (!d.rel) return d.truth ? power(k) : RegularRelation::empty(p_.base(), k);
    if (d.vars == target) return *d.rel;
    std::vector<int> tracks;
    std::vector<char> covered(k, 0);
    for (const auto& v : d.vars) {
      tracks.push_back(index_of(target, v));
      covered[tracks.back()] = 1;
    }
    std::vector<TrackBinding> parts{{&*d.rel, tracks}};
    for (int t = 0; t < k; ++t)
      if (!covered[t]) parts.push_back({&p_.domain(), {t}});
    return synchronize(p_.base(), k, parts, limits_);
  }

  std::vector<std::string> merged(const Denotation& a, const Denotation& b) {
    auto vars = a.vars;
    for (const auto& v : b.vars)
      if (index_of(vars, v) < 0) vars.push_back(v);
    return vars;
  }

  Denotation negate(Denotation d) {
    if (!d.rel) return truth(!d.truth);
    const int k = static_cast<int>(d.vars.size());
    return relation(d.vars, subtract(power(k), *d.rel));
  }

  Denotation conjoin(const Denotation& a, const Denotation& b) {
    if (!a.rel) return a.truth ? b : lift_to(truth(false), b.vars);
    if (!b.rel) return conjoin(b, a);
    const auto vars = merged(a, b);
    if (a.vars == b.vars) return relation(vars, intersect(*a.rel, *b.rel));
    std::vector<int> ta, tb;
    for (const auto& v : a.vars) ta.push_back(index_of(vars, v));
    for (const auto& v : b.vars) tb.push_back(index_of(vars, v));
    return relation(vars, synchronize(p_.base(), static_cast<int>(vars.size()),
                                      {{&*a.rel, ta}, {&*b.rel, tb}}, limits_));
  }

  Denotation disjoin(const Denotation& a, const Denotation& b) {
    if (!a.rel && !b.rel) return truth(a.truth || b.truth);
    const auto vars = merged(a, b);
    return relation(vars, unite(lift(a, vars), lift(b, vars)));
  }

  Denotation iff(const Denotation& a, const Denotation& b) {
    if (!a.rel && !b.rel) return truth(a.truth == b.truth);
    const auto vars = merged(a, b);
    const auto la = lift(a, vars), lb = lift(b, vars);
    const auto differ = RegularRelation::from_valid(
        p_.base(), static_cast<int>(vars.size()),
        product(la.dfa(), lb.dfa(), BoolOp::symmetric_difference));
    return relation(vars, subtract(power(static_cast<int>(vars.size())), differ));
  }

  Denotation atom(const Formula& f) {
    const auto& r = p_.relation(f.name);
    if (static_cast<int>(f.terms.size()) != r.arity())
      throw CompileError("relation '" + f.name + "' has arity " + std::to_string(r.arity()) +
                         " but is applied to " + std::to_string(f.terms.size()) + " arguments");
    std::vector<std::string> vars;
    std::vector<Word> consts;
    std::vector<int> tracks;
    for (const auto& t : f.terms) {
      if (t.is_variable()) {
        int i = index_of(vars, t.text);
        if (i < 0) {
          i = static_cast<int>(vars.size());
          vars.push_back(t.text);
        }
        tracks.push_back(i);
      } else {
        consts.push_back(constant(t.text));
        tracks.push_back(-static_cast<int>(consts.size()));
      }
    }
    if (vars.empty()) return truth(r.contains(consts));
    const int nv = static_cast<int>(vars.size());
    for (auto& t : tracks)
      if (t < 0) t = nv + (-t - 1);
    bool identity = consts.empty();
    for (int i = 0; i < static_cast<int>(tracks.size()) && identity; ++i) identity = tracks[i] == i;
    if (identity) return relation(vars, r);
    std::vector<RegularRelation> singles;
    singles.reserve(consts.size());
    for (const auto& c : consts)
      singles.push_back(RegularRelation::from_language(Dfa::single_word(p_.base(), c)));
    std::vector<TrackBinding> parts{{&r, tracks}};
    for (std::size_t j = 0; j < consts.size(); ++j)
      parts.push_back({&singles[j], {nv + static_cast<int>(j)}});
    auto rel = synchronize(p_.base(), nv + static_cast<int>(consts.size()), parts, limits_);
    for (int t = nv + static_cast<int>(consts.size()) - 1; t >= nv; --t)
      rel = project_exists(rel, t, Dfa::universal(p_.base()), limits_);
    return relation(vars, rel);
  }

  Denotation equal(const Formula& f) {
    const Term& a = f.terms[0];
    const Term& b = f.terms[1];
    if (!a.is_variable() && !b.is_variable()) return truth(constant(a.text) == constant(b.text));
    if (a.is_variable() && b.is_variable()) {
      if (a.text == b.text) return relation({a.text}, p_.domain());
      return relation({a.text, b.text}, intersect(equality_relation(p_.base()), power(2)));
    }
    const Term& v = a.is_variable() ? a : b;
    const Term& c = a.is_variable() ? b : a;
    return relation({v.text}, RegularRelation::from_language(Dfa::single_word(p_.base(), constant(c.text))));
  }

  Denotation quantifier(const Formula& f) {
    using K = Formula::Kind;
    if (f.kind == K::forall) {
      auto inner = negate(compile(*f.left));
      return negate(exists(f.name, inner));
    }
    Denotation body = compile(*f.left);
    switch (f.kind) {
      case K::exists:
        return exists(f.name, body);
      case K::exists_infinitely:
        return exists_infinitely(f.name, body);
      case K::exists_mod:
        return exists_mod(f.name, f.modulus, f.residue, body);
      default:
        break;
    }
    throw CompileError("unexpected quantifier");
  }

  Denotation exists(const std::string& x, const Denotation& body) {
    const int i = index_of(body.vars, x);
    if (i < 0) {
      // x does not occur: only a nonempty domain matters.
      if (!p_.domain().empty()) return body;
      return lift_to(truth(false), body.vars);
    }
    if (body.vars.size() == 1) return truth(!body.rel->empty());
    auto vars = body.vars;
    vars.erase(vars.begin() + i);
    return relation(vars, project_exists(*body.rel, i, Dfa::universal(p_.base()), limits_));
  }

  Denotation exists_infinitely(const std::string& x, const Denotation& body) {
    const int i = index_of(body.vars, x);
    if (i < 0) {
      if (p_.domain().infinite()) return body;
      return lift_to(truth(false), body.vars);
    }
    if (body.vars.size() == 1) return truth(body.rel->infinite());
    auto vars = body.vars;
    vars.erase(vars.begin() + i);
    const int k = static_cast<int>(vars.size());
    return relation(vars, intersect(autostruct::exists_infinitely(*body.rel, i, limits_), power(k)));
  }

  Denotation exists_mod(const std::string& x, std::uint32_t n, std::uint32_t m, const Denotation& body) {
    const int i = index_of(body.vars, x);
    if (i < 0) {
      // The witness set is the whole domain where the body holds, else empty.
      const auto size = language_size_mod(p_.domain_dfa(), n);
      const bool when_true = size && *size == m;
      const bool when_false = m == 0;
      if (!body.rel) return truth(body.truth ? when_true : when_false);
      Denotation out = truth(false);
      if (when_true) out = body;
      if (when_false) out = disjoin(out, negate(body));
      return lift_to(out, body.vars);
    }
    if (body.vars.size() == 1) {
      const auto size = language_size_mod(body.rel->dfa(), n);
      return truth(size && *size == m);
    }
    auto vars = body.vars;
    vars.erase(vars.begin() + i);
    const int k = static_cast<int>(vars.size());
    return relation(vars, intersect(autostruct::exists_mod(*body.rel, i, n, m, limits_), power(k)));
  }

  Denotation lift_to(const Denotation& d, const std::vector<std::string>& vars) {
    if (vars.empty()) return d;
    return relation(vars, lift(d, vars));
  }

  Denotation dispatch(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::atom:
        return atom(f);
      case K::equal:
        return equal(f);
      case K::negation:
        return negate(compile(*f.left));
      case K::conjunction: {
        auto a = compile(*f.left);
        return conjoin(a, compile(*f.right));
      }
      case K::disjunction: {
        auto a = compile(*f.left);
        return disjoin(a, compile(*f.right));
      }
      case K::implication: {
        auto a = negate(compile(*f.left));
        return disjoin(a, compile(*f.right));
      }
      case K::equivalence: {
        auto a = compile(*f.left);
        return iff(a, compile(*f.right));
      }
      default:
        return quantifier(f);
    }
  }

  const Presentation& p_;
  Limits limits_;
};

}  // namespace

CompiledFormula compile(const Presentation& p, const Formula& f, const CompileOptions& options) {
  Compiler c(p, options);
  Denotation d = c.compile(f);
  CompiledFormula out;
  out.source = to_string(f);
  if (!d.rel) {
    out.truth = d.truth;
    return out;
  }
  const auto order = free_variables(f);
  if (d.vars != order) {
    std::vector<int> perm;
    for (const auto& v : order) perm.push_back(index_of(d.vars, v));
    d.rel = rearrange(*d.rel, perm, Limits{options.state_cap});
  }
  out.variables = order;
  out.relation = std::move(d.rel);
  return out;
}

CompiledFormula compile(const Presentation& p, std::string_view text, const CompileOptions& options) {
  auto f = parse_formula(text);
  auto out = compile(p, *f, options);
  out.source = std::string(text);
  return out;
}

bool decide(const Presentation& p, const Formula& sentence, const CompileOptions& options) {
  const auto free = free_variables(sentence);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    throw CompileError("formula has free variables: " + names);
  }
  return compile(p, sentence, options).truth;
}

bool decide(const Presentation& p, std::string_view sentence, const CompileOptions& options) {
  return decide(p, *parse_formula(sentence), options);
}

Witnesses witness(const Presentation& p, const Formula& f, std::size_t max_count,
                  const CompileOptions& options) {
  auto c = compile(p, f, options);
  if (c.is_sentence()) throw CompileError("formula has no free variables; use decide");
  Witnesses out;
  out.variables = c.variables;
  const int k = static_cast<int>(c.variables.size());
  for (const auto& word : enumerate(c.relation->dfa(), max_count)) {
    std::vector<std::string> row;
    for (const auto& part : deconvolve(*p.base(), k, word)) row.push_back(p.format_element(part));
    out.rows.push_back(std::move(row));
  }
  return out;
}

Witnesses witness(const Presentation& p, std::string_view text, std::size_t max_count,
                  const CompileOptions& options) {
  return witness(p, *parse_formula(text), max_count, options);
}

Presentation define_relation(const Presentation& p, const std::string& name, std::string_view text,
                             const std::vector<std::string>& parameters, const CompileOptions& options) {
  if (p.has_relation(name)) throw CompileError("relation '" + name + "' already defined");
  auto c = compile(p, text, options);
  if (c.is_sentence()) throw CompileError("definition of '" + name + "' has no free variables");
  RegularRelation rel = *c.relation;
  if (!parameters.empty()) {
    auto sorted_params = parameters;
    auto sorted_vars = c.variables;
    std::sort(sorted_params.begin(), sorted_params.end());
    std::sort(sorted_vars.begin(), sorted_vars.end());
    if (sorted_params != sorted_vars)
      throw CompileError("parameters of '" + name + "' do not match the free variables");
    std::vector<int> perm;
    for (const auto& v : parameters) perm.push_back(index_of(c.variables, v));
    rel = rearrange(rel, perm, Limits{options.state_cap});
  }
  return p.with_relation(name, rel);
}

}  // namespace autostruct
