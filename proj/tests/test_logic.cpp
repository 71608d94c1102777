#include <doctest.h>

#include <random>

#include "autostruct/compiler.hpp"
#include "autostruct/error.hpp"
#include "finite_model.hpp"

using namespace autostruct;
using oracle::FiniteModel;

namespace {

// (1*; Le, S) built directly from step functions, independent of the
// structures library.
Presentation unary() {
  auto base = Alphabet::make({"1"});
  Presentation p(base, Dfa::universal(base));
  const auto pad = pad_digit(*base);
  // key[0]: 0 = both running, 1 = left ended
  auto le = build_relation(
      base, 2, {0},
      [&](const StateKey& s, std::span<const std::uint32_t> c, StateKey& out) {
        if (c[1] == pad) return false;
        if (c[0] == pad) {
          out = {1};
          return true;
        }
        if (s[0] == 1) return false;
        out = s;
        return true;
      },
      [](const StateKey&) { return true; });
  auto succ = build_relation(
      base, 2, {0},
      [&](const StateKey& s, std::span<const std::uint32_t> c, StateKey& out) {
        if (s[0] == 1 || c[1] == pad) return false;
        out = {c[0] == pad ? 1u : 0u};
        return true;
      },
      [](const StateKey& s) { return s[0] == 1; });
  p.add_relation("Le", le);
  p.add_relation("S", succ);
  return p;
}

std::string ones(std::size_t n) { return std::string(n, '1'); }

FiniteModel tiny_model() {
  FiniteModel m;
  m.base = Alphabet::make({"a", "b"});
  for (const char* s : {"", "a", "b", "ab"}) m.elements.push_back(m.base->parse_word(s));
  oracle::FiniteRelation lt;
  lt.arity = 2;
  for (std::size_t i = 0; i < m.elements.size(); ++i)
    for (std::size_t j = i + 1; j < m.elements.size(); ++j) lt.tuples.insert({m.elements[i], m.elements[j]});
  m.relations["Lt"] = lt;
  return m;
}

}  // namespace

TEST_CASE("parser builds the expected trees") {
  auto f = parse_formula("A x. A y. (Add(x,y,z) -> Add(y,x,z))");
  CHECK(f->kind == Formula::Kind::forall);
  CHECK(free_variables(*f) == std::vector<std::string>{"z"});

  auto g = parse_formula("EI y. Le(x,y)");
  CHECK(g->kind == Formula::Kind::exists_infinitely);
  CHECK(g->name == "y");

  auto h = parse_formula("E[2,0] z. Between(x,z,y)");
  CHECK(h->kind == Formula::Kind::exists_mod);
  CHECK(h->modulus == 2);
  CHECK(h->residue == 0);
  CHECK(free_variables(*h) == std::vector<std::string>{"x", "y"});

  auto c = parse_formula("x = \"101\"");
  CHECK(c->kind == Formula::Kind::equal);
  CHECK(c->terms[1].kind == Term::Kind::constant);
  CHECK(c->terms[1].text == "101");
}

TEST_CASE("parser precedence and associativity") {
  CHECK(to_string(*parse_formula("P(x) | Q(x) & R(x)")) == to_string(*parse_formula("P(x) | (Q(x) & R(x))")));
  CHECK(to_string(*parse_formula("P(x) -> Q(x) <-> R(x)")) ==
        to_string(*parse_formula("(P(x) -> Q(x)) <-> R(x)")));
  CHECK(to_string(*parse_formula("~P(x) & Q(x)")) == to_string(*parse_formula("(~P(x)) & Q(x)")));
  // A quantifier body is a unary, so it binds tighter than &.
  auto f = parse_formula("E x. P(x) & Q(x)");
  CHECK(f->kind == Formula::Kind::conjunction);
  CHECK(free_variables(*f) == std::vector<std::string>{"x"});
}

TEST_CASE("parser renames shadowing binders") {
  auto f = parse_formula("P(x) & E x. Q(x)");
  CHECK(free_variables(*f) == std::vector<std::string>{"x"});
  const auto text = to_string(*f);
  CHECK(text.find("E x ") == std::string::npos);
  auto g = parse_formula("E x. E x. P(x)");
  CHECK(free_variables(*g).empty());
  CHECK(to_string(*g) != "(E x. (E x. P(x)))");
}

TEST_CASE("parser errors carry positions") {
  auto column_of = [](const char* text) -> std::size_t {
    try {
      parse_formula(text);
    } catch (const SyntaxError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("P(x) &") == 7);
  CHECK(column_of("P(x,)") == 5);
  CHECK(column_of("E[2,2] x. P(x)") != 0);
  CHECK(column_of("E[0,0] x. P(x)") != 0);
  CHECK(column_of("P(x) $ Q(x)") == 6);
  CHECK(column_of("x = \"01") == 5);
  try {
    parse_formula("P(x)\n  & & Q(x)");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("to_string round trips through the parser") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto m = oracle::random_model(rng, 6, 2);
    oracle::FormulaGenerator gen(m, rng);
    auto f = gen.generate(4, {"x"});
    const auto text = to_string(*f);
    CHECK(to_string(*parse_formula(text)) == text);
  }
}

TEST_CASE("compile on a finite structure") {
  auto m = tiny_model();
  auto p = oracle::present(m);
  CHECK(decide(p, "A x. ~Lt(x,x)"));
  CHECK(decide(p, "E x. A y. (Lt(x,y) | x = y)"));
  CHECK_FALSE(decide(p, "A x. E y. Lt(x,y)"));
  CHECK(decide(p, "E[2,0] x. x = x"));
  CHECK(decide(p, "E[3,1] x. x = x"));
  CHECK_FALSE(decide(p, "EI x. x = x"));
  CHECK(decide(p, "Lt(\"a\", \"ab\")"));
  CHECK_THROWS_AS(decide(p, "Lt(x, \"a\")"), CompileError);
  CHECK_THROWS_AS(decide(p, "Lt(\"a\", \"bb\")"), CompileError);
  CHECK_THROWS_AS(decide(p, "Gt(\"a\", \"b\")"), CompileError);
  CHECK_THROWS_AS(decide(p, "E x. Lt(x)"), CompileError);

  auto c = compile(p, "Lt(y,x) & E z. (Lt(y,z) & Lt(z,x))");
  REQUIRE(c.relation);
  CHECK(c.variables == std::vector<std::string>{"y", "x"});
  CHECK(c.relation->contains({m.elements[0], m.elements[2]}));
  CHECK_FALSE(c.relation->contains({m.elements[0], m.elements[1]}));
}

TEST_CASE("decide agrees with the naive interpreter on random finite structures") {
  std::mt19937 rng(2024);
  int checked = 0;
  for (int round = 0; round < 40; ++round) {
    auto m = oracle::random_model(rng, 10, 2);
    auto p = oracle::present(m);
    oracle::Interpreter interp(m);
    oracle::FormulaGenerator gen(m, rng);
    for (int i = 0; i < 15; ++i) {
      auto f = gen.generate(4, {});
      std::map<std::string, Word> env;
      INFO(to_string(*f));
      CHECK(decide(p, *f) == interp.eval(*f, env));
      ++checked;
    }
  }
  CHECK(checked == 600);
}

TEST_CASE("compiled relations agree with the interpreter on all tuples, junk rejected") {
  std::mt19937 rng(99);
  const auto junk = oracle::words_upto(2, 5);
  for (int round = 0; round < 25; ++round) {
    auto m = oracle::random_model(rng, 8, 2);
    auto p = oracle::present(m);
    oracle::Interpreter interp(m);
    oracle::FormulaGenerator gen(m, rng);
    auto f = gen.generate(3, {"x", "y"});
    auto c = compile(p, *f);
    INFO(to_string(*f));
    if (c.is_sentence()) {
      std::map<std::string, Word> env;
      CHECK(c.truth == interp.eval(*f, env));
      continue;
    }
    const std::set<Word> dom(m.elements.begin(), m.elements.end());
    const int k = static_cast<int>(c.variables.size());
    // Any word up to length 5, in or out of the domain.
    std::vector<std::vector<Word>> tuples{{}};
    for (int t = 0; t < k; ++t) {
      std::vector<std::vector<Word>> next;
      for (const auto& tup : tuples)
        for (std::size_t j = 0; j < junk.size(); j += (t == 0 ? 1 : 3)) {
          auto v = tup;
          v.push_back(junk[j]);
          next.push_back(std::move(v));
        }
      tuples = std::move(next);
    }
    for (const auto& tup : tuples) {
      bool in_domain = true;
      for (const auto& w : tup) in_domain = in_domain && dom.count(w);
      bool expected = false;
      if (in_domain) {
        std::map<std::string, Word> env;
        for (int t = 0; t < k; ++t) env[c.variables[t]] = tup[t];
        expected = interp.eval(*f, env);
      }
      CHECK(c.relation->contains(tup) == expected);
    }
  }
}

TEST_CASE("boolean connectives compile to products") {
  auto p = unary();
  auto a = compile(p, "Le(x,y)");
  auto b = compile(p, "S(x,y)");
  auto both = compile(p, "Le(x,y) & S(x,y)");
  auto either = compile(p, "Le(x,y) | S(x,y)");
  auto neither = compile(p, "~Le(x,y)");
  CHECK(both.relation->dfa().structurally_equal(intersect(*a.relation, *b.relation).dfa()));
  CHECK(either.relation->dfa().structurally_equal(unite(*a.relation, *b.relation).dfa()));
  CHECK(neither.relation->dfa().structurally_equal(subtract(p.domain_power(2), *a.relation).dfa()));
  // Track alignment when variable orders differ.
  auto swapped = compile(p, "Le(y,x) & Le(x,y)");
  auto eq = compile(p, "y = x");
  CHECK(*swapped.relation == *eq.relation);
}

TEST_CASE("decide on an infinite unary order") {
  auto p = unary();
  CHECK(decide(p, "A x. E y. (Le(x,y) & ~ x = y)"));
  CHECK_FALSE(decide(p, "E x. A y. Le(y,x)"));
  CHECK(decide(p, "E x. A y. Le(x,y)"));
  CHECK(decide(p, "A x. A y. (S(x,y) <-> (Le(x,y) & ~x = y & ~E z. (Le(x,z) & Le(z,y) & ~z = x & ~z = y)))"));
  CHECK(decide(p, "A x. EI y. Le(x,y)"));
  CHECK_FALSE(decide(p, "E x. EI y. Le(y,x)"));
  CHECK(decide(p, "EI x. x = x"));
  CHECK_FALSE(decide(p, "E[2,0] x. x = x"));

  auto up = compile(p, "EI y. Le(x,y)");
  auto down = compile(p, "EI y. Le(y,x)");
  CHECK(*up.relation == p.domain());
  CHECK(down.relation->empty());
}

TEST_CASE("exists-infinitely agrees with per-tuple instantiation") {
  auto p = unary();
  auto body = compile(p, "Le(x,y) & ~S(x,y) | Le(y,x)");
  auto c = compile(p, "EI y. (Le(x,y) & ~S(x,y) | Le(y,x))");
  auto other = compile(p, "EI x. (Le(y,x) & Le(x,y))");
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> len(0, 12);
  for (int i = 0; i < 20; ++i) {
    const auto x = p.parse_element(ones(len(rng)));
    auto witnesses = instantiate(*body.relation, 0, x);
    CHECK(c.relation->contains({x}) == witnesses.infinite());
    CHECK_FALSE(other.relation->contains({x}));
  }
}

TEST_CASE("counting quantifiers count interval sizes") {
  auto p = unary();
  auto even = compile(p, "E[2,0] z. (Le(x,z) & Le(z,y))");
  auto three = compile(p, "E[3,1] z. (Le(x,z) & Le(z,y))");
  REQUIRE(even.variables == std::vector<std::string>{"x", "y"});
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) {
      const std::size_t size = a <= b ? b - a + 1 : 0;
      const std::vector<Word> tup{p.parse_element(ones(a)), p.parse_element(ones(b))};
      CHECK(even.relation->contains(tup) == (size % 2 == 0));
      CHECK(three.relation->contains(tup) == (size % 3 == 1));
    }
  // Infinite witness sets count as false.
  auto above = compile(p, "E[2,0] y. Le(x,y)");
  CHECK(above.relation->empty());
  auto below = compile(p, "E[2,1] y. Le(y,x)");
  CHECK(below.relation->contains({p.parse_element("")}));
  CHECK_FALSE(below.relation->contains({p.parse_element("1")}));
}

TEST_CASE("witness enumerates length-lex least tuples") {
  auto p = unary();
  auto w = witness(p, "S(x,y)", 3);
  CHECK(w.variables == std::vector<std::string>{"x", "y"});
  REQUIRE(w.rows.size() == 3);
  CHECK(w.rows[0] == std::vector<std::string>{"", "1"});
  CHECK(w.rows[1] == std::vector<std::string>{"1", "11"});
  CHECK(w.rows[2] == std::vector<std::string>{"11", "111"});
  CHECK(witness(p, "Le(x,y) & ~Le(x,y)", 5).rows.empty());
  auto c = witness(p, "x = \"111\"", 5);
  REQUIRE(c.rows.size() == 1);
  CHECK(c.rows[0] == std::vector<std::string>{"111"});
  CHECK(witness(p, "S(x,y)", 0).rows.empty());
  CHECK_THROWS_AS(witness(p, "E x. S(x,x)", 3), CompileError);
}

TEST_CASE("define_relation extends a presentation") {
  auto p = unary();
  auto q = define_relation(p, "Lt", "Le(x,y) & ~x = y");
  CHECK(q.signature().size() == 3);
  CHECK(p.signature().size() == 2);
  auto r = define_relation(q, "Succ", "Lt(x,y) & ~E z.(Lt(x,z) & Lt(z,y))");
  for (std::size_t a = 0; a < 10; ++a)
    for (std::size_t b = 0; b < 10; ++b) CHECK(r.holds("Succ", {ones(a), ones(b)}) == (b == a + 1));
  auto ge = define_relation(p, "Ge", "Le(x,y)", {"y", "x"});
  CHECK(ge.holds("Ge", {"11", "1"}));
  CHECK_FALSE(ge.holds("Ge", {"1", "11"}));
  CHECK_THROWS_AS(define_relation(q, "Lt", "Le(x,y)"), CompileError);
  CHECK_THROWS_AS(define_relation(q, "Bad", "Le(x,y)", {"x", "z"}), CompileError);
  CHECK_THROWS_AS(define_relation(q, "Bad", "E x. Le(x,x)"), CompileError);

  auto eqf = define_relation(q, "EqF", "~ EI z. ((Lt(x,z) & Lt(z,y)) | (Lt(y,z) & Lt(z,x)))");
  CHECK(decide(eqf, "A x. A y. EqF(x,y)"));
}

TEST_CASE("state cap raises a resource error naming the subformula") {
  auto p = unary();
  CompileOptions tight;
  tight.state_cap = 2;
  try {
    compile(p, "E z. (Le(x,z) & Le(z,y) & ~S(x,y))", tight);
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimit& e) {
    CHECK_FALSE(e.subformula().empty());
    CHECK(std::string(e.what()).find(e.subformula()) != std::string::npos);
  }
}

TEST_CASE("free variables must be closed for decide") {
  auto p = unary();
  CHECK_THROWS_AS(decide(p, "Le(x,y)"), CompileError);
  CHECK_THROWS_AS(decide(p, "E x. Le(x"), SyntaxError);
}
